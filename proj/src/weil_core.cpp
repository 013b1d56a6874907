#include "weilflow/weil_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "weilflow/errors.hpp"

namespace weilflow {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RatPoly = std::vector<Rational>;
using LongComplex = std::complex<long double>;

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long long>(i));
  trim(d);
  return d;
}

// Long division; returns {quotient, remainder}.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  trim(a);
  if (b.empty()) throw std::logic_error("polynomial division by zero");
  if (a.size() < b.size()) return {RatPoly{}, a};
  RatPoly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  trim(a);
  trim(q);
  return {q, a};
}

RatPoly monic(RatPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

// Yun's algorithm: f = prod_i factor_i^i with square-free, pairwise coprime
// factors. Returns (factor, multiplicity) for the non-constant factors.
std::vector<std::pair<RatPoly, int>> square_free_factors(const RatPoly& f) {
  std::vector<std::pair<RatPoly, int>> out;
  RatPoly fp = derivative(f);
  RatPoly a = poly_gcd(f, fp);
  RatPoly b = divmod(f, a).first;
  RatPoly c = divmod(fp, a).first;
  RatPoly d = sub(c, derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    RatPoly ai = poly_gcd(b, d);
    b = divmod(b, ai).first;
    c = divmod(d, ai).first;
    d = sub(c, derivative(b));
    if (ai.size() > 1) out.emplace_back(monic(ai), i);
  }
  return out;
}

std::pair<LongComplex, LongComplex> eval_with_derivative(const std::vector<long double>& p, LongComplex x) {
  LongComplex v = 0, dv = 0;
  for (std::size_t k = p.size(); k-- > 0;) {
    dv = dv * x + v;
    v = v * x + p[k];
  }
  return {v, dv};
}

std::vector<Complex> roots_of_square_free(const RatPoly& h, double sqrt_q) {
  const std::size_t degree = h.size() - 1;
  std::vector<long double> coeffs;
  for (const auto& c : h) coeffs.push_back(c.convert_to<long double>());

  std::vector<LongComplex> seeds;
  if (degree == 1) {
    seeds.emplace_back(-coeffs[0] / coeffs[1], 0.0L);
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (std::size_t i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < degree; ++i) companion(i, degree - 1) = -static_cast<double>(coeffs[i]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorKind::RootRefinementFailure, "companion eigenvalue iteration did not converge");
    }
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      const auto e = solver.eigenvalues()[i];
      seeds.emplace_back(e.real(), e.imag());
    }
  }

  const long double target = kRootTolerance * sqrt_q;
  std::vector<Complex> out;
  for (LongComplex x : seeds) {
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      auto [v, dv] = eval_with_derivative(coeffs, x);
      if (std::abs(dv) == 0.0L) break;
      LongComplex step = v / dv;
      x -= step;
      if (std::abs(step) < target) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorKind::RootRefinementFailure,
                  "Newton polishing did not reach |h/h'| < 1e-13*sqrt(q) near " +
                      std::to_string(static_cast<double>(x.real())) + "+" +
                      std::to_string(static_cast<double>(x.imag())) + "i");
    }
    out.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  }

  // Real polynomial: rebuild the roots as exact conjugate pairs.
  const double real_cut = 1e-9 * sqrt_q;
  std::vector<Complex> upper, real_roots;
  std::size_t lower = 0;
  for (const auto& r : out) {
    if (std::abs(r.imag()) <= real_cut) real_roots.emplace_back(r.real(), 0.0);
    else if (r.imag() > 0) upper.push_back(r);
    else ++lower;
  }
  if (lower != upper.size()) {
    throw Error(ErrorKind::RootRefinementFailure, "computed roots are not closed under conjugation");
  }
  std::vector<Complex> result = real_roots;
  for (const auto& r : upper) {
    result.push_back(r);
    result.push_back(std::conj(r));
  }
  for (std::size_t i = 0; i < result.size(); ++i) {
    for (std::size_t j = i + 1; j < result.size(); ++j) {
      if (std::abs(result[i] - result[j]) < 1e-10 * sqrt_q) {
        throw Error(ErrorKind::RootRefinementFailure, "Newton polishing merged two distinct roots");
      }
    }
  }
  return result;
}

bool root_order(const Complex& a, const Complex& b) {
  const double arg_a = std::arg(Complex(a.real(), a.imag() == 0.0 ? 0.0 : a.imag()));
  const double arg_b = std::arg(Complex(b.real(), b.imag() == 0.0 ? 0.0 : b.imag()));
  if (arg_a != arg_b) return arg_a < arg_b;
  return a.real() < b.real();
}

BigInt parse_coefficient(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return BigInt(v.get<std::uint64_t>());
    return BigInt(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return BigInt(s[0] == '+' ? s.substr(1) : s);
    }
  }
  throw Error(ErrorKind::BadInput, "coefficient is not an integer: " + v.dump());
}

std::int64_t require_int(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(ErrorKind::BadInput, std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw Error(ErrorKind::BadInput, std::string("field '") + key + "' must be an integer, got " + v.dump());
  }
  return v.get<std::int64_t>();
}

}  // namespace

std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q) {
  if (q < 2) return std::nullopt;
  std::int64_t p = 0;
  for (std::int64_t d = 2; d <= q / d; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::pair{q, 1};
  int f = 0;
  while (q % p == 0) {
    q /= p;
    ++f;
  }
  if (q != 1) return std::nullopt;
  return std::pair{p, f};
}

double riemann_deviation(const std::vector<Complex>& roots, std::int64_t q) {
  const double qd = static_cast<double>(q);
  double worst = 0.0;
  for (const auto& mu : roots) worst = std::max(worst, std::abs(std::norm(mu) - qd) / qd);
  return worst;
}

WeilDatum make_weil_datum(std::int64_t q, int g, IntPoly coeffs, std::string label, const ValidateOptions& options) {
  if (q < 2) throw Error(ErrorKind::BadInput, "q must be >= 2, got " + std::to_string(q));
  auto pf = prime_power(q);
  if (!pf) throw Error(ErrorKind::NotPrimePower, "q = " + std::to_string(q) + " is not a prime power");
  if (g < 1) throw Error(ErrorKind::BadInput, "g must be >= 1, got " + std::to_string(g));
  if (g > options.max_dimension) {
    throw Error(ErrorKind::DimensionTooLarge, "g = " + std::to_string(g) + " exceeds the dimension limit " +
                                                  std::to_string(options.max_dimension));
  }
  if (coeffs.size() != static_cast<std::size_t>(2 * g + 1)) {
    throw Error(ErrorKind::BadLength, "weil_poly has " + std::to_string(coeffs.size()) +
                                          " coefficients; 2g+1 = " + std::to_string(2 * g + 1) + " expected");
  }
  const BigInt qg = pow(BigInt(q), static_cast<unsigned>(g));
  if (coeffs.front() != 1) {
    throw Error(ErrorKind::BadNormalization, "c_0 = " + to_string(coeffs.front()) + ", expected 1");
  }
  if (coeffs.back() != qg) {
    throw Error(ErrorKind::BadNormalization,
                "c_2g = " + to_string(coeffs.back()) + ", expected q^g = " + to_string(qg));
  }

  WeilDatum w{q, pf->first, pf->second, g, std::move(coeffs), std::move(label)};
  const auto roots = compute_roots(companion_matrix(w));
  const double dev = riemann_deviation(roots, q);
  if (!(dev <= kRiemannTolerance)) {
    double worst_modulus = 0.0;
    double worst = -1.0;
    for (const auto& mu : roots) {
      double d = std::abs(std::norm(mu) - static_cast<double>(q));
      if (d > worst) {
        worst = d;
        worst_modulus = std::abs(mu);
      }
    }
    throw Error(ErrorKind::RiemannHypothesisViolation,
                "root of modulus " + std::to_string(worst_modulus) + " off |mu| = sqrt(q) = " +
                    std::to_string(std::sqrt(static_cast<double>(q))) + " (relative deviation " +
                    std::to_string(dev) + " > 1e-9)");
  }
  return w;
}

WeilDatum parse_and_validate(const nlohmann::json& doc, const ValidateOptions& options) {
  if (!doc.is_object()) throw Error(ErrorKind::BadInput, "input document must be a JSON object");
  const std::int64_t q = require_int(doc, "q");
  std::string label = doc.contains("label") && doc.at("label").is_string() ? doc.at("label").get<std::string>() : "";

  if (doc.contains("trace") && !doc.contains("weil_poly")) {
    if (doc.contains("g") && require_int(doc, "g") != 1) {
      throw Error(ErrorKind::BadInput, "the trace shorthand is only valid for g = 1");
    }
    BigInt a = parse_coefficient(doc.at("trace"));
    return make_weil_datum(q, 1, IntPoly{BigInt(1), -a, BigInt(q)}, std::move(label), options);
  }
  const std::int64_t g = require_int(doc, "g");
  if (g < 1 || g > 64) throw Error(ErrorKind::BadInput, "g out of range: " + std::to_string(g));
  if (!doc.contains("weil_poly") || !doc.at("weil_poly").is_array()) {
    throw Error(ErrorKind::BadInput, "missing array field 'weil_poly'");
  }
  IntPoly coeffs;
  for (const auto& v : doc.at("weil_poly")) coeffs.push_back(parse_coefficient(v));
  return make_weil_datum(q, static_cast<int>(g), std::move(coeffs), std::move(label), options);
}

nlohmann::json to_json(const WeilDatum& w) {
  nlohmann::json poly = nlohmann::json::array();
  const BigInt lo = std::numeric_limits<std::int64_t>::min();
  const BigInt hi = std::numeric_limits<std::int64_t>::max();
  for (const auto& c : w.coeffs) {
    if (c >= lo && c <= hi) poly.push_back(c.convert_to<std::int64_t>());
    else poly.push_back(to_string(c));
  }
  return {{"q", w.q}, {"g", w.g}, {"weil_poly", poly}, {"label", w.label}};
}

FrobeniusModel companion_matrix(const WeilDatum& w) {
  const std::size_t n = static_cast<std::size_t>(2 * w.g);
  FrobeniusModel m;
  m.q = w.q;
  m.g = w.g;
  // char(F)(T) = sum_i c_{2g-i} T^i.
  m.charpoly = reversed(w.coeffs);
  m.matrix = IntMatrix(n, n);
  for (std::size_t i = 1; i < n; ++i) m.matrix(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m.matrix(i, n - 1) = -m.charpoly[i];

  const BigInt det = determinant(m.matrix);
  const BigInt qg = pow(BigInt(w.q), static_cast<unsigned>(w.g));
  if (det != qg) {
    throw Error(ErrorKind::BadNormalization, "det(F) = " + to_string(det) + " but q^g = " + to_string(qg));
  }
  return m;
}

std::vector<Complex> compute_roots(const FrobeniusModel& m) {
  RatPoly f;
  for (const auto& c : m.charpoly) f.emplace_back(c);
  const double sqrt_q = std::sqrt(static_cast<double>(m.q));
  std::vector<Complex> roots;
  for (const auto& [factor, multiplicity] : square_free_factors(f)) {
    for (const auto& r : roots_of_square_free(factor, sqrt_q)) {
      for (int k = 0; k < multiplicity; ++k) roots.push_back(r);
    }
  }
  if (roots.size() + 1 != m.charpoly.size()) {
    throw Error(ErrorKind::RootRefinementFailure, "square-free decomposition lost roots");
  }
  std::stable_sort(roots.begin(), roots.end(), root_order);
  return roots;
}

FrobeniusModel frobenius_model(const WeilDatum& w) {
  FrobeniusModel m = companion_matrix(w);
  m.roots = compute_roots(m);
  const double qd = static_cast<double>(w.q);
  std::vector<bool> used(m.roots.size(), false);
  m.partner.assign(m.roots.size(), 0);
  for (std::size_t i = 0; i < m.roots.size(); ++i) {
    const Complex target = qd / m.roots[i];
    std::size_t best = m.roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    // Nearest unused root, so equal roots pair copy-by-copy.
    for (std::size_t k = 0; k < m.roots.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(m.roots[k] - target);
      if (d < best_dist) {
        best_dist = d;
        best = k;
      }
    }
    m.partner[i] = best;
    used[best] = true;
  }
  return m;
}

OrdinarityVerdict check_ordinary(const WeilDatum& w) {
  OrdinarityVerdict v;
  v.middle_coefficient = w.coeffs[static_cast<std::size_t>(w.g)];
  const BigInt p = w.p;
  v.is_ordinary = (v.middle_coefficient % p) != 0;
  if (v.middle_coefficient != 0) {
    BigInt c = abs(v.middle_coefficient);
    int val = 0;
    while (c % p == 0) {
      c /= p;
      ++val;
    }
    v.p_valuation = val;
  }
  return v;
}

}  // namespace weilflow
