#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "weilflow/integer_matrix.hpp"

namespace weilflow {

using Complex = std::complex<double>;

// Relative tolerance for | |mu|^2 - q | <= kRiemannTolerance * q.
inline constexpr double kRiemannTolerance = 1e-9;
// Newton polishing stops once |h(mu)/h'(mu)| < kRootTolerance * sqrt(q).
inline constexpr double kRootTolerance = 1e-13;

// Validated arithmetic input: q = p^f, dimension g, and the coefficients
// c_0..c_{2g} of P_1(X) = sum c_i X^i with c_0 = 1 and c_{2g} = q^g.
struct WeilDatum {
  std::int64_t q = 0;
  std::int64_t p = 0;
  int f = 0;
  int g = 0;
  IntPoly coeffs;
  std::string label;

  friend bool operator==(const WeilDatum&, const WeilDatum&) = default;
};

// Integer model of Frobenius: the companion matrix of T^{2g} + c_1 T^{2g-1} +
// ... + c_{2g} and its refined complex eigenvalues.
struct FrobeniusModel {
  std::int64_t q = 0;
  int g = 0;
  IntMatrix matrix;
  IntPoly charpoly;              // monic, ascending
  std::vector<Complex> roots;    // sorted by (arg, real part)
  std::vector<std::size_t> partner;  // index of q / mu (= conj mu) for each root
  double precision = kRootTolerance;
};

struct OrdinarityVerdict {
  bool is_ordinary = false;
  BigInt middle_coefficient;
  // v_p(c_g); empty when c_g = 0.
  std::optional<int> p_valuation;
};

struct ValidateOptions {
  int max_dimension = 8;
};

// Accepts {"q", "g", "weil_poly", "label"} or the elliptic shorthand
// {"q", "trace"} meaning weil_poly = [1, -trace, q]. Coefficients may be JSON
// integers or decimal strings.
WeilDatum parse_and_validate(const nlohmann::json& doc, const ValidateOptions& options = {});

// Validation for already-split fields.
WeilDatum make_weil_datum(std::int64_t q, int g, IntPoly coeffs, std::string label = {},
                          const ValidateOptions& options = {});

nlohmann::json to_json(const WeilDatum& w);

// Companion matrix only; roots are left empty.
FrobeniusModel companion_matrix(const WeilDatum& w);

// Eigenvalues of the companion matrix, Newton-polished on the square-free
// factors of the exact characteristic polynomial.
std::vector<Complex> compute_roots(const FrobeniusModel& m);

// Companion matrix plus roots and pairing.
FrobeniusModel frobenius_model(const WeilDatum& w);

OrdinarityVerdict check_ordinary(const WeilDatum& w);

// max_i | |mu_i|^2 - q | / q.
double riemann_deviation(const std::vector<Complex>& roots, std::int64_t q);

// Prime factorisation of q when it is a prime power.
std::optional<std::pair<std::int64_t, int>> prime_power(std::int64_t q);

}  // namespace weilflow
