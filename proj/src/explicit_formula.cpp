#include "weilflow/explicit_formula.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "weilflow/errors.hpp"
#include "weilflow/quadrature.hpp"

namespace weilflow {

namespace {

// Tail of one sublattice beyond |nu| > n for an order-k majorant:
// |tau_nu| >= (2 pi / log q)(|nu| - 1/2) because |Im s_S| <= pi / log q, and
// sum_{nu > n} (nu - 1/2)^-k <= (n + 1/2)^-k + (n + 1/2)^{1-k} / (k - 1).
double sublattice_tail(double constant, int order, double log_q, std::int64_t n) {
  if (constant == 0.0) return 0.0;
  const double scale = std::pow(log_q / (2.0 * std::numbers::pi), order);
  const double x = static_cast<double>(n) + 0.5;
  return 2.0 * constant * scale * (std::pow(x, -order) + std::pow(x, 1 - order) / (order - 1));
}

// Smallest n in [0, cap] with sublattice_tail(n) <= budget, or cap + 1.
std::int64_t truncation_for_budget(double constant, int order, double log_q, double budget, std::int64_t cap) {
  if (sublattice_tail(constant, order, log_q, 0) <= budget) return 0;
  if (sublattice_tail(constant, order, log_q, cap) > budget) return cap + 1;
  std::int64_t lo = 0, hi = cap;  // tail(lo) > budget >= tail(hi)
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (sublattice_tail(constant, order, log_q, mid) <= budget) hi = mid;
    else lo = mid;
  }
  return hi;
}

std::int64_t nu_at(std::int64_t position) {
  if (position == 0) return 0;
  return (position % 2) ? (position + 1) / 2 : -(position / 2);
}

template <typename Fn>
auto with_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw e.with_stage(stage);
  }
}

}  // namespace

TraceResult trace_j(const ZeroLattice& lattice, int j, const TestFunction& alpha, const TraceOptions& options) {
  if (j < 0 || j > 2 * lattice.g) throw Error(ErrorKind::BadInput, "trace index j out of range");
  if (alpha.empty()) throw Error(ErrorKind::BadInput, "empty test function");
  const auto& base = lattice.base[static_cast<std::size_t>(j)];
  const std::size_t sublattices = base.size();

  TraceResult out;
  out.j = j;

  // Majorants at sigma = j/2, inflated by exp(delta * max|t|) to cover the
  // actual real parts of the base exponents.
  const double sigma = 0.5 * j;
  double delta = 0.0;
  for (const auto& s : base) delta = std::max(delta, std::abs(s.real() - sigma));
  const double reach = std::max(std::abs(alpha.lower()), std::abs(alpha.upper()));
  const double inflate = std::exp(delta * reach);

  const double budget = options.tolerance / (static_cast<double>(sublattices) * (2.0 * lattice.g + 1.0));
  std::int64_t best_n = std::numeric_limits<std::int64_t>::max();
  int best_order = 2;
  double best_constant = 0.0;
  double best_tail = std::numeric_limits<double>::infinity();
  for (int order = 2; order <= std::max(2, options.max_majorant_order); ++order) {
    const double constant = tail_majorant(alpha, sigma, order).constant * inflate;
    if (options.nu_max) {
      const double tail = sublattice_tail(constant, order, lattice.log_q, *options.nu_max);
      if (tail < best_tail) {
        best_tail = tail;
        best_order = order;
        best_constant = constant;
        best_n = *options.nu_max;
      }
    } else {
      const std::int64_t n = truncation_for_budget(constant, order, lattice.log_q, budget, options.nu_cap);
      if (n < best_n) {
        best_n = n;
        best_order = order;
        best_constant = constant;
        best_tail = sublattice_tail(constant, order, lattice.log_q, n);
      }
    }
  }
  if (best_n > options.nu_cap) {
    throw Error(ErrorKind::TruncationBudgetExceeded,
                "trace j = " + std::to_string(j) + " needs |nu| > " + std::to_string(options.nu_cap) +
                    " to reach the truncation budget " + std::to_string(budget));
  }
  out.nu_max = best_n;
  out.majorant_order = best_order;
  out.majorant_constant = best_constant;
  out.tail_bound = best_tail * static_cast<double>(sublattices);

  const TestFunctionTransform transform(alpha, options.quadrature);
  const std::int64_t per_subset = 2 * best_n + 1;
  const std::int64_t total = per_subset * static_cast<std::int64_t>(sublattices);
  out.zeros = static_cast<std::size_t>(total);

  struct Partial {
    CompensatedSum<Complex> sum;
    double error = 0.0;
  };
  auto run_range = [&](std::int64_t begin, std::int64_t end, Partial& part) {
    for (std::int64_t idx = begin; idx < end; ++idx) {
      const auto s = static_cast<std::size_t>(idx / per_subset);
      const std::int64_t nu = nu_at(idx % per_subset);
      const Complex rho = base[s] + Complex(0.0, lattice.period * static_cast<double>(nu));
      const PhiEstimate e = transform(rho);
      part.sum.add(e.value);
      part.error += e.error;
    }
  };

  const int threads = std::max(1, options.threads);
  std::vector<Partial> partials(static_cast<std::size_t>(threads));
  if (threads == 1) {
    run_range(0, total, partials[0]);
  } else {
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(threads));
    const std::int64_t chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::int64_t begin = std::min(total, t * chunk);
      const std::int64_t end = std::min(total, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          run_range(begin, end, partials[static_cast<std::size_t>(t)]);
        } catch (...) {
          failures[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    pool.clear();
    for (const auto& f : failures)
      if (f) std::rethrow_exception(f);
  }
  CompensatedSum<Complex> sum;
  for (const auto& p : partials) {
    sum.add(p.sum.value());
    out.quadrature_error += p.error;
  }
  out.value = sum.value();
  return out;
}

SpectralResult spectral_side_zero_sum(const ZeroLattice& lattice, const PjFamily& family, const TestFunction& alpha,
                                      const TraceOptions& options) {
  if (family.g != lattice.g || family.q != lattice.q) {
    throw Error(ErrorKind::BadInput, "zero lattice and P_j family come from different inputs");
  }
  SpectralResult out;
  CompensatedSum<Complex> index, from_j1;
  for (int j = 0; j <= 2 * lattice.g; ++j) {
    TraceResult t = trace_j(lattice, j, alpha, options);
    const Complex signed_value = (j % 2 ? -1.0 : 1.0) * t.value;
    index.add(signed_value);
    if (j >= 1) from_j1.add(signed_value);
    out.tail_bound += t.tail_bound;
    out.quadrature_error += t.quadrature_error;
    out.zeros += t.zeros;
    out.per_j.push_back(std::move(t));
  }
  out.zero_sum = index.value();
  out.zero_sum_from_j1 = from_j1.value();
  return out;
}

int required_count_range(const TestFunction& alpha, double log_q) {
  const double reach = std::max(std::abs(alpha.lower()), std::abs(alpha.upper()));
  return std::max(1, static_cast<int>(std::floor(reach / log_q)));
}

namespace {

void require_range(const CountTable& ct, int needed) {
  for (int n = 1; n <= needed; ++n) {
    if (!ct.N.count(n) || !ct.a.count(n)) {
      throw Error(ErrorKind::InsufficientCountRange, "test-function support needs counts up to n = " +
                                                         std::to_string(needed) + " but the table stops at " +
                                                         std::to_string(ct.range));
    }
  }
}

// q^{g n} for n < 0 as a double.
double negative_weight(std::int64_t q, int g, int n) {
  return std::pow(static_cast<double>(q), static_cast<double>(g) * static_cast<double>(n));
}

}  // namespace

double spectral_side_closed_form(const CountTable& ct, const TestFunction& alpha, std::int64_t q, int g) {
  const double log_q = std::log(static_cast<double>(q));
  const int range = required_count_range(alpha, log_q);
  require_range(ct, range);
  CompensatedSum<double> sum;
  for (int n = -range; n <= range; ++n) {
    if (n == 0) continue;
    const double a = alpha(n * log_q);
    if (a == 0.0) continue;
    const double count = to_double(ct.N.at(std::abs(n)));
    const double weight = n > 0 ? 1.0 : negative_weight(q, g, n);
    sum.add(log_q * count * weight * a);
  }
  return sum.value();
}

GeometricResult geometric_side(const CountTable& ct, const TestFunction& alpha, std::int64_t q, int g) {
  const double log_q = std::log(static_cast<double>(q));
  const int range = required_count_range(alpha, log_q);
  require_range(ct, range);
  GeometricResult out;
  CompensatedSum<double> pos, neg;
  for (int n = -range; n <= range; ++n) {
    if (n == 0) continue;
    const double a = alpha(n * log_q);
    if (a == 0.0) continue;
    for (int d : divisors(std::abs(n))) {
      GeometricCell cell;
      cell.d = d;
      cell.k = n / d;
      cell.closed_points = ct.a.at(d);
      cell.alpha = a;
      cell.weight = n > 0 ? 1.0 : negative_weight(q, g, n);
      cell.value = log_q * static_cast<double>(d) * to_double(cell.closed_points) * cell.weight * a;
      (n > 0 ? pos : neg).add(cell.value);
      out.cells.push_back(std::move(cell));
    }
  }
  out.positive = pos.value();
  out.negative = neg.value();
  CompensatedSum<double> total;
  total.add(out.positive);
  total.add(out.negative);
  out.total = total.value();
  return out;
}

VerificationReport verify(const WeilDatum& w, const TestFunction& alpha, const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (!(options.tolerance > 0.0)) throw Error(ErrorKind::BadInput, "tolerance must be > 0", "config");
  if (alpha.empty()) throw Error(ErrorKind::BadInput, "verify needs at least one test-function bump", "config");

  VerificationReport r;
  r.input = w;
  r.tolerance = options.tolerance;
  r.ordinarity = check_ordinary(w);
  if (!r.ordinarity.is_ordinary && !options.allow_non_ordinary) {
    throw Error(ErrorKind::NonOrdinary,
                "middle coefficient c_g = " + to_string(r.ordinarity.middle_coefficient) + " is divisible by p = " +
                    std::to_string(w.p),
                "ordinarity");
  }

  const FrobeniusModel model = with_stage("frobenius_model", [&] { return frobenius_model(w); });
  const PjFamily family = with_stage("exterior_powers", [&] { return build_pj_family(model); });
  r.functional_equation_deviation =
      with_stage("functional_equation", [&] { return functional_equation_check(family).max_deviation; });
  const ZeroLattice lattice = zero_lattice(family);
  r.critical_line_deviation = critical_line_deviation(lattice);

  const double log_q = lattice.log_q;
  const CountTable counts = with_stage("counting", [&] { return count_table(model, required_count_range(alpha, log_q)); });
  r.geometric = with_stage("geometric_side", [&] { return geometric_side(counts, alpha, w.q, w.g); });

  TraceOptions trace = options.trace;
  trace.tolerance = options.tolerance;
  r.spectral = with_stage("spectral_zero_sum", [&] { return spectral_side_zero_sum(lattice, family, alpha, trace); });
  r.spectral.closed_form =
      with_stage("spectral_closed_form", [&] { return spectral_side_closed_form(counts, alpha, w.q, w.g); });

  const double geo = r.geometric.total;
  const double closed = *r.spectral.closed_form;
  const double relative = options.tolerance * (1.0 + std::abs(geo));
  Residuals& res = r.residuals;
  res.zero_sum_vs_geometric = std::abs(r.spectral.zero_sum - Complex(geo, 0.0));
  res.zero_sum_vs_closed_form = std::abs(r.spectral.zero_sum - Complex(closed, 0.0));
  res.closed_form_vs_geometric = std::abs(closed - geo);
  res.budget = relative + r.spectral.tail_bound + r.spectral.quadrature_error;

  bool imaginary_ok = true;
  for (const auto& t : r.spectral.per_j) {
    res.max_imaginary_part = std::max(res.max_imaginary_part, std::abs(t.value.imag()));
    if (std::abs(t.value.imag()) > t.tail_bound + t.quadrature_error + relative) imaginary_ok = false;
  }
  r.pass = res.zero_sum_vs_geometric <= res.budget && res.zero_sum_vs_closed_form <= res.budget &&
           res.closed_form_vs_geometric <= relative && imaginary_ok;
  r.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace weilflow
