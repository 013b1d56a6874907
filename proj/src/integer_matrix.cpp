#include "weilflow/integer_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace weilflow {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const BigInt& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntMatrix power(const IntMatrix& a, unsigned exponent) {
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

BigInt trace(const IntMatrix& a) {
  BigInt t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
  return t;
}

BigInt determinant(IntMatrix a) {
  if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && a(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

IntPoly characteristic_polynomial(const IntMatrix& a) {
  if (!a.square()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  IntPoly coeffs(n + 1);
  coeffs[n] = 1;
  // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  IntMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += coeffs[n - k + 1];
    m = std::move(next);
    BigInt t = trace(a * m);
    if (t % k != 0) throw std::logic_error("inexact division in Faddeev-LeVerrier");
    coeffs[n - k] = -t / k;
  }
  return coeffs;
}

namespace {

// Unimodular row/column elimination that leaves a(k, k) dividing every entry of
// its row and column and zeroes them out.
void clear_pivot_cross(IntMatrix& a, std::size_t k) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  for (;;) {
    bool changed = false;
    for (std::size_t i = k + 1; i < n; ++i) {
      while (!a(i, k).is_zero()) {
        BigInt q = a(i, k) / a(k, k);
        for (std::size_t j = k; j < m; ++j) a(i, j) -= q * a(k, j);
        if (!a(i, k).is_zero()) {
          for (std::size_t j = k; j < m; ++j) std::swap(a(i, j), a(k, j));
        }
        changed = true;
      }
    }
    for (std::size_t j = k + 1; j < m; ++j) {
      while (!a(k, j).is_zero()) {
        BigInt q = a(k, j) / a(k, k);
        for (std::size_t i = k; i < n; ++i) a(i, j) -= q * a(i, k);
        if (!a(k, j).is_zero()) {
          for (std::size_t i = k; i < n; ++i) std::swap(a(i, j), a(i, k));
        }
        changed = true;
      }
    }
    if (!changed) return;
  }
}

}  // namespace

std::vector<BigInt> smith_normal_form(IntMatrix a) {
  const std::size_t n = std::min(a.rows(), a.cols());
  std::vector<BigInt> diag;
  diag.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Pivot on the smallest nonzero entry of the trailing block.
    std::size_t pi = k, pj = k;
    bool found = false;
    for (std::size_t i = k; i < a.rows(); ++i) {
      for (std::size_t j = k; j < a.cols(); ++j) {
        if (a(i, j).is_zero()) continue;
        if (!found || abs(a(i, j)) < abs(a(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) {
      diag.resize(n, BigInt(0));
      break;
    }
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(k, j), a(pi, j));
    for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, k), a(i, pj));
    clear_pivot_cross(a, k);
    diag.push_back(abs(a(k, k)));
  }
  // Restore the divisibility chain: (x, y) -> (gcd, lcm) preserves the product.
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      if (diag[i].is_zero()) {
        std::swap(diag[i], diag[j]);
        continue;
      }
      if (diag[j].is_zero()) continue;
      BigInt g = gcd(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  return diag;
}

IntPoly reversed(const IntPoly& p) { return IntPoly(p.rbegin(), p.rend()); }

std::string to_string(const BigInt& v) { return v.str(); }

double to_double(const BigInt& v) { return v.convert_to<double>(); }

}  // namespace weilflow
