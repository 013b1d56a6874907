#include "weilflow/counting_orbits.hpp"

#include <cmath>
#include <stdexcept>

#include "weilflow/errors.hpp"

namespace weilflow {

int moebius(int n) {
  if (n < 1) throw std::invalid_argument("moebius of non-positive integer");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

std::vector<int> divisors(int n) {
  std::vector<int> small, large;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

BigInt point_count(const FrobeniusModel& m, int n) {
  if (n < 1) throw Error(ErrorKind::BadInput, "point count needs n >= 1, got " + std::to_string(n));
  const IntMatrix id = IntMatrix::identity(m.matrix.rows());
  const BigInt det = determinant(id - power(m.matrix, static_cast<unsigned>(n)));
  if (det <= 0) {
    throw Error(ErrorKind::CorrespondenceFailure,
                "det(I - F^" + std::to_string(n) + ") = " + to_string(det) + " is not positive");
  }
  return det;
}

namespace {

BigInt moebius_sum(const std::map<int, BigInt>& values, int n, const char* what) {
  BigInt sum = 0;
  for (int d : divisors(n)) {
    auto it = values.find(d);
    if (it == values.end()) {
      throw Error(ErrorKind::InsufficientCountRange,
                  std::string(what) + " for index " + std::to_string(d) + " is not available");
    }
    sum += moebius(n / d) * it->second;
  }
  return sum;
}

}  // namespace

BigInt closed_point_count(const CountTable& ct, int d) {
  const BigInt sum = moebius_sum(ct.N, d, "N");
  if (sum % d != 0 || sum < 0) {
    throw Error(ErrorKind::NonIntegralInversion,
                "Moebius inversion at d = " + std::to_string(d) + " gives " + to_string(sum) + "/" + std::to_string(d));
  }
  return sum / d;
}

CountTable count_table(const FrobeniusModel& m, int range) {
  CountTable ct;
  ct.range = range;
  for (int n = 1; n <= range; ++n) ct.N[n] = point_count(m, n);
  for (int d = 1; d <= range; ++d) ct.a[d] = closed_point_count(ct, d);
  for (int n = 1; n <= range; ++n) {
    BigInt total = 0;
    for (int d : divisors(n)) total += d * ct.a[d];
    if (total != ct.N[n]) {
      throw Error(ErrorKind::NonIntegralInversion, "sum_{d|n} d a_d != N_n at n = " + std::to_string(n));
    }
  }
  return ct;
}

FixedPointGroup fixed_point_group(const FrobeniusModel& m, int n) {
  if (n < 1) throw Error(ErrorKind::BadInput, "fixed-point group needs n >= 1, got " + std::to_string(n));
  FixedPointGroup grp;
  grp.n = n;
  grp.snf = smith_normal_form(power(m.matrix, static_cast<unsigned>(n)) - IntMatrix::identity(m.matrix.rows()));
  grp.order = 1;
  for (const auto& d : grp.snf) grp.order *= d;
  return grp;
}

BigInt primitive_orbit_count(const CountTable& ct, int nu) {
  if (nu < 1) throw Error(ErrorKind::BadInput, "orbit period must be >= 1, got " + std::to_string(nu));
  const BigInt sum = moebius_sum(ct.N, nu, "N");
  if (sum % nu != 0) {
    throw Error(ErrorKind::NonIntegralInversion, "primitive points of period " + std::to_string(nu) +
                                                     " not divisible into orbits: " + to_string(sum));
  }
  const BigInt b = sum / nu;
  auto it = ct.a.find(nu);
  if (it != ct.a.end() && it->second != b) {
    throw Error(ErrorKind::CorrespondenceFailure, "b_" + std::to_string(nu) + " = " + to_string(b) +
                                                      " but a_" + std::to_string(nu) + " = " + to_string(it->second));
  }
  return b;
}

OrbitTable orbit_table(const FrobeniusModel& m, const CountTable& ct, int max_nu) {
  OrbitTable ot;
  std::map<int, BigInt> fixed;
  for (int n = 1; n <= max_nu; ++n) {
    auto grp = fixed_point_group(m, n);
    auto it = ct.N.find(n);
    if (it != ct.N.end() && it->second != grp.order) {
      throw Error(ErrorKind::CorrespondenceFailure, "|Gamma/(F^" + std::to_string(n) + "-1)Gamma| = " +
                                                        to_string(grp.order) + " but N = " + to_string(it->second));
    }
    fixed[n] = grp.order;
    ot.groups.emplace(n, std::move(grp));
  }
  const double log_q = std::log(static_cast<double>(m.q));
  for (int nu = 1; nu <= max_nu; ++nu) {
    // Points of exact period nu, grouped into orbits of size nu.
    const BigInt exact_period = moebius_sum(fixed, nu, "fixed-point order");
    if (exact_period % nu != 0) {
      throw Error(ErrorKind::NonIntegralInversion, "points of exact period " + std::to_string(nu) +
                                                       " do not split into orbits: " + to_string(exact_period));
    }
    BigInt b = exact_period / nu;
    auto it = ct.a.find(nu);
    if (it != ct.a.end() && it->second != b) {
      throw Error(ErrorKind::CorrespondenceFailure, "orbit count b_" + std::to_string(nu) + " = " + to_string(b) +
                                                        " but a_" + std::to_string(nu) + " = " + to_string(it->second));
    }
    ot.orbits[nu] = OrbitEntry{std::move(b), static_cast<double>(nu) * log_q};
  }
  return ot;
}

}  // namespace weilflow
