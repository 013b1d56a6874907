#pragma once

#include <map>
#include <vector>

#include "weilflow/integer_matrix.hpp"
#include "weilflow/weil_core.hpp"

namespace weilflow {

int moebius(int n);
std::vector<int> divisors(int n);

// N_n = |det(F^n - I)|. det(I - F^n) > 0 is asserted, not assumed.
BigInt point_count(const FrobeniusModel& m, int n);

// N_n = #A_0(F_{q^n}) and closed-point counts a_d for 1 <= n, d <= range.
struct CountTable {
  std::map<int, BigInt> N;
  std::map<int, BigInt> a;
  int range = 0;
};

CountTable count_table(const FrobeniusModel& m, int range);

// a_d = (1/d) sum_{e | d} moebius(d/e) N_e; must be a non-negative integer.
BigInt closed_point_count(const CountTable& ct, int d);

// Gamma / (F^n - I) Gamma for the companion lattice.
struct FixedPointGroup {
  int n = 0;
  BigInt order;
  std::vector<BigInt> snf;  // d_1 | d_2 | ... | d_2g
};

FixedPointGroup fixed_point_group(const FrobeniusModel& m, int n);

// b_nu = (1/nu) sum_{d | nu} moebius(nu/d) N_d, checked against a_nu.
BigInt primitive_orbit_count(const CountTable& ct, int nu);

struct OrbitEntry {
  BigInt count;
  double length = 0.0;  // nu log q
};

// Primitive orbits by period, counted from fixed-point group orders (Smith
// normal form route) and matched exactly against the closed-point counts.
struct OrbitTable {
  std::map<int, OrbitEntry> orbits;
  std::map<int, FixedPointGroup> groups;
};

OrbitTable orbit_table(const FrobeniusModel& m, const CountTable& ct, int max_nu);

}  // namespace weilflow
