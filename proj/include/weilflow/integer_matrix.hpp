#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace weilflow {

using BigInt = boost::multiprecision::cpp_int;

// Polynomial with exact coefficients, ascending powers.
using IntPoly = std::vector<BigInt>;

// Dense row-major matrix over the integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix power(const IntMatrix& a, unsigned exponent);
BigInt trace(const IntMatrix& a);

// Fraction-free (Bareiss) elimination; exact.
BigInt determinant(IntMatrix a);

// Monic characteristic polynomial det(T*I - A), ascending coefficients.
// Faddeev-LeVerrier: every intermediate stays integral and each division by k
// is exact.
IntPoly characteristic_polynomial(const IntMatrix& a);

// Elementary divisors d_1 | d_2 | ... of a square matrix (non-negative,
// zeros last).
std::vector<BigInt> smith_normal_form(IntMatrix a);

// Reverse coefficient order: x^n p(1/x).
IntPoly reversed(const IntPoly& p);

std::string to_string(const BigInt& v);
double to_double(const BigInt& v);

}  // namespace weilflow
