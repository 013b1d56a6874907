#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace weilflow {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order (Newton on the Legendre recurrence).
// Order 64 is cached.
const GaussRule& gauss_legendre(int order);

// Neumaier-compensated accumulator.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    compensation_ += component_abs(sum_) >= component_abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  T value() const { return sum_ + compensation_; }

 private:
  static double component_abs(double v) { return v < 0 ? -v : v; }
  static double component_abs(const std::complex<double>& v) { return std::abs(v.real()) + std::abs(v.imag()); }

  T sum_{};
  T compensation_{};
};

// Compensation per component for complex values.
template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace weilflow
