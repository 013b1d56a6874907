#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weilflow/counting_orbits.hpp"
#include "weilflow/exterior_powers.hpp"
#include "weilflow/test_functions.hpp"
#include "weilflow/weil_core.hpp"

namespace weilflow {

struct TraceOptions {
  // Total truncation budget; each of the 2g+1 traces gets an equal share,
  // split again evenly over its C(2g, j) sublattices.
  double tolerance = 1e-8;
  std::int64_t nu_cap = 10'000'000;
  // Fixed truncation |nu| <= nu_max instead of the budget-driven choice.
  std::optional<std::int64_t> nu_max;
  // Majorant orders 2..max_majorant_order are tried; the one needing the
  // fewest terms wins.
  int max_majorant_order = 12;
  int threads = 1;
  QuadratureOptions quadrature;
};

struct TraceResult {
  int j = 0;
  Complex value;
  std::int64_t nu_max = 0;
  double tail_bound = 0.0;        // certified, summed over sublattices
  double quadrature_error = 0.0;
  int majorant_order = 2;
  double majorant_constant = 0.0;
  std::size_t zeros = 0;
};

// T_j = sum over |S| = j and |nu| <= nu_max of Phi(s_S + 2 pi i nu / log q).
// Summation order: subsets lexicographic, nu = 0, 1, -1, 2, -2, ...
TraceResult trace_j(const ZeroLattice& lattice, int j, const TestFunction& alpha, const TraceOptions& options);

struct SpectralResult {
  std::vector<TraceResult> per_j;
  Complex zero_sum;            // sum_{j=0}^{2g} (-1)^j T_j (the transversal index)
  Complex zero_sum_from_j1;    // sum_{j=1}^{2g} (-1)^j T_j
  double tail_bound = 0.0;
  double quadrature_error = 0.0;
  std::size_t zeros = 0;
  std::optional<double> closed_form;
};

SpectralResult spectral_side_zero_sum(const ZeroLattice& lattice, const PjFamily& family, const TestFunction& alpha,
                                      const TraceOptions& options);

// Largest n >= 1 with n log q inside the convex hull of the supports.
int required_count_range(const TestFunction& alpha, double log_q);

// log q [ sum_{k>=1} N_k alpha(k log q) + sum_{k<=-1} q^{gk} N_{-k} alpha(k log q) ].
double spectral_side_closed_form(const CountTable& ct, const TestFunction& alpha, std::int64_t q, int g);

struct GeometricCell {
  int k = 0;
  int d = 0;
  BigInt closed_points;  // a_d
  double alpha = 0.0;    // alpha(k d log q)
  double weight = 0.0;   // 1 for k > 0, q^{g k d} for k < 0
  double value = 0.0;    // log q * d * a_d * weight * alpha
};

struct GeometricResult {
  double positive = 0.0;
  double negative = 0.0;
  double total = 0.0;
  std::vector<GeometricCell> cells;  // sorted by (k d, d)
};

// log q sum_d d a_d [ sum_{k>=1} alpha(k d log q) + sum_{k<=-1} q^{g k d} alpha(k d log q) ].
GeometricResult geometric_side(const CountTable& ct, const TestFunction& alpha, std::int64_t q, int g);

struct VerifyOptions {
  double tolerance = 1e-8;
  bool allow_non_ordinary = false;
  TraceOptions trace;  // trace.tolerance is overwritten with tolerance
};

struct Residuals {
  double zero_sum_vs_geometric = 0.0;
  double zero_sum_vs_closed_form = 0.0;
  double closed_form_vs_geometric = 0.0;
  double max_imaginary_part = 0.0;
  double budget = 0.0;  // tolerance (1 + |geometric|) + tail + quadrature
};

struct VerificationReport {
  WeilDatum input;
  OrdinarityVerdict ordinarity;
  double tolerance = 0.0;
  double functional_equation_deviation = 0.0;
  double critical_line_deviation = 0.0;
  SpectralResult spectral;
  GeometricResult geometric;
  Residuals residuals;
  bool pass = false;
  double wall_time_seconds = 0.0;
};

VerificationReport verify(const WeilDatum& w, const TestFunction& alpha, const VerifyOptions& options);

}  // namespace weilflow
