#pragma once

#include <cstdint>
#include <vector>

#include "weilflow/integer_matrix.hpp"
#include "weilflow/weil_core.hpp"

namespace weilflow {

using Subset = std::vector<int>;

// All j-subsets of {0, ..., n-1} in lexicographic order.
std::vector<Subset> lexicographic_subsets(int n, int j);

std::size_t binomial(int n, int k);

// Lambda^j F in the lexicographic basis of j-subsets; entry (I, J) is the
// minor of F on rows I and columns J.
IntMatrix exterior_power_matrix(const IntMatrix& f, int j);

// P_0..P_{2g} exactly, plus the complex products lambda_S for each j.
struct PjFamily {
  std::int64_t q = 0;
  int g = 0;
  std::vector<IntPoly> polys;                    // P_j, ascending in X
  std::vector<std::vector<Subset>> subsets;      // lexicographic, per j
  std::vector<std::vector<Complex>> products;    // lambda_S, aligned with subsets
  double cross_check_deviation = 0.0;            // worst scaled coefficient error
};

PjFamily build_pj_family(const FrobeniusModel& m);

struct FunctionalEquationCheck {
  bool ok = false;
  double max_deviation = 0.0;
};

// s -> g - s maps the zero base exponents of P_j onto those of P_{2g-j}
// modulo 2 pi i / log q. Throws FunctionalEquationViolation past 1e-8.
FunctionalEquationCheck functional_equation_check(const PjFamily& fam);

// Zeros of P_j(q^{-s}): s_S + 2 pi i nu / log q with s_S = log(lambda_S)/log q
// on the principal branch.
struct ZeroLattice {
  std::int64_t q = 0;
  int g = 0;
  double log_q = 0.0;
  double period = 0.0;  // 2 pi / log q
  std::vector<std::vector<Complex>> base;  // per j, aligned with PjFamily::subsets
};

ZeroLattice zero_lattice(const PjFamily& fam);

struct LatticeZero {
  Complex rho;
  std::size_t subset = 0;
  std::int64_t nu = 0;
};

// Every zero of P_j(q^{-s}) with |Im rho| <= window, sorted by (Im, subset).
std::vector<LatticeZero> zeros_in_window(const ZeroLattice& lattice, int j, double window);

// max |Re s_S - j/2| over all sublattices.
double critical_line_deviation(const ZeroLattice& lattice);

}  // namespace weilflow
