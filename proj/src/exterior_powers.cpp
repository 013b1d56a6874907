#include "weilflow/exterior_powers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "weilflow/errors.hpp"

namespace weilflow {

std::vector<Subset> lexicographic_subsets(int n, int j) {
  std::vector<Subset> out;
  if (j < 0 || j > n) return out;
  Subset s(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) s[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(s);
    int i = j - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - j + i) --i;
    if (i < 0) break;
    ++s[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < j; ++k) s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

IntMatrix exterior_power_matrix(const IntMatrix& f, int j) {
  const int n = static_cast<int>(f.rows());
  const auto basis = lexicographic_subsets(n, j);
  IntMatrix out(basis.size(), basis.size());
  IntMatrix minor(static_cast<std::size_t>(j), static_cast<std::size_t>(j));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < basis.size(); ++c) {
      for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b)
          minor(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
              f(static_cast<std::size_t>(basis[r][static_cast<std::size_t>(a)]),
                static_cast<std::size_t>(basis[c][static_cast<std::size_t>(b)]));
      out(r, c) = determinant(minor);
    }
  }
  return out;
}

PjFamily build_pj_family(const FrobeniusModel& m) {
  const int n = 2 * m.g;
  PjFamily fam;
  fam.q = m.q;
  fam.g = m.g;
  const double sqrt_q = std::sqrt(static_cast<double>(m.q));
  for (int j = 0; j <= n; ++j) {
    // P_j(X) = det(I - X Lambda^j F) = reversed characteristic polynomial.
    fam.polys.push_back(reversed(characteristic_polynomial(exterior_power_matrix(m.matrix, j))));
    auto subs = lexicographic_subsets(n, j);
    std::vector<Complex> prods;
    prods.reserve(subs.size());
    for (const auto& s : subs) {
      Complex lambda = 1.0;
      for (int i : s) lambda *= m.roots[static_cast<std::size_t>(i)];
      prods.push_back(lambda);
    }

    // Expand prod_S (1 - lambda_S X) in floating point and compare to the
    // exact coefficients, scaled by the natural size C(deg, i) q^{j i / 2}.
    std::vector<Complex> expanded{1.0};
    for (const auto& lambda : prods) {
      expanded.push_back(0.0);
      for (std::size_t i = expanded.size() - 1; i > 0; --i) expanded[i] -= lambda * expanded[i - 1];
    }
    const auto& exact = fam.polys.back();
    if (exact.size() != expanded.size()) {
      throw Error(ErrorKind::CrossCheckFailure, "deg P_" + std::to_string(j) + " does not match C(2g, j)");
    }
    const double modulus = std::pow(sqrt_q, j);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      const double scale = static_cast<double>(binomial(static_cast<int>(prods.size()), static_cast<int>(i))) *
                           std::pow(modulus, static_cast<double>(i));
      const double dev = std::abs(expanded[i] - Complex(to_double(exact[i]), 0.0)) / scale;
      fam.cross_check_deviation = std::max(fam.cross_check_deviation, dev);
      if (!(dev <= 1e-8)) {
        throw Error(ErrorKind::CrossCheckFailure, "P_" + std::to_string(j) + " coefficient " + std::to_string(i) +
                                                      ": exact " + to_string(exact[i]) + " vs float " +
                                                      std::to_string(expanded[i].real()));
      }
    }
    fam.subsets.push_back(std::move(subs));
    fam.products.push_back(std::move(prods));
  }
  return fam;
}

ZeroLattice zero_lattice(const PjFamily& fam) {
  ZeroLattice z;
  z.q = fam.q;
  z.g = fam.g;
  z.log_q = std::log(static_cast<double>(fam.q));
  z.period = 2.0 * std::numbers::pi / z.log_q;
  for (const auto& prods : fam.products) {
    std::vector<Complex> base;
    base.reserve(prods.size());
    for (const auto& lambda : prods) {
      // Signed zero would pick Im log = -pi on the negative real axis.
      const Complex l(lambda.real(), lambda.imag() == 0.0 ? 0.0 : lambda.imag());
      base.push_back(std::log(l) / z.log_q);
    }
    z.base.push_back(std::move(base));
  }
  return z;
}

namespace {

// Distance between two base exponents modulo the imaginary period.
double lattice_distance(Complex a, Complex b, double period) {
  const double re = a.real() - b.real();
  double im = std::remainder(a.imag() - b.imag(), period);
  return std::hypot(re, im);
}

}  // namespace

FunctionalEquationCheck functional_equation_check(const PjFamily& fam) {
  const ZeroLattice z = zero_lattice(fam);
  const int n = 2 * fam.g;
  FunctionalEquationCheck out;
  for (int j = 0; j <= n; ++j) {
    const auto& src = z.base[static_cast<std::size_t>(j)];
    const auto& dst = z.base[static_cast<std::size_t>(n - j)];
    std::vector<bool> used(dst.size(), false);
    for (const auto& s : src) {
      const Complex image = static_cast<double>(fam.g) - s;
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_k = dst.size();
      for (std::size_t k = 0; k < dst.size(); ++k) {
        if (used[k]) continue;
        const double d = lattice_distance(image, dst[k], z.period);
        if (d < best) {
          best = d;
          best_k = k;
        }
      }
      if (best_k == dst.size()) best = std::numeric_limits<double>::infinity();
      else used[best_k] = true;
      out.max_deviation = std::max(out.max_deviation, best);
    }
  }
  out.ok = out.max_deviation <= 1e-8;
  if (!out.ok) {
    throw Error(ErrorKind::FunctionalEquationViolation,
                "zero multisets of P_j and P_{2g-j} differ by " + std::to_string(out.max_deviation) + " > 1e-8");
  }
  return out;
}

std::vector<LatticeZero> zeros_in_window(const ZeroLattice& lattice, int j, double window) {
  std::vector<LatticeZero> out;
  if (j < 0 || j > 2 * lattice.g || window < 0) return out;
  const auto& base = lattice.base[static_cast<std::size_t>(j)];
  for (std::size_t s = 0; s < base.size(); ++s) {
    const double im = base[s].imag();
    const auto lo = static_cast<std::int64_t>(std::ceil((-window - im) / lattice.period));
    const auto hi = static_cast<std::int64_t>(std::floor((window - im) / lattice.period));
    for (std::int64_t nu = lo - 1; nu <= hi + 1; ++nu) {
      const Complex rho = base[s] + Complex(0.0, lattice.period * static_cast<double>(nu));
      if (std::abs(rho.imag()) <= window) out.push_back({rho, s, nu});
    }
  }
  std::sort(out.begin(), out.end(), [](const LatticeZero& a, const LatticeZero& b) {
    if (a.rho.imag() != b.rho.imag()) return a.rho.imag() < b.rho.imag();
    return a.subset < b.subset;
  });
  return out;
}

double critical_line_deviation(const ZeroLattice& lattice) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lattice.base.size(); ++j)
    for (const auto& s : lattice.base[j]) worst = std::max(worst, std::abs(s.real() - 0.5 * static_cast<double>(j)));
  return worst;
}

}  // namespace weilflow
