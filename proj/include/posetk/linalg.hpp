#pragma once

// Exact integer linear algebra on Eigen dense types. Everything here is
// templated on the scalar so the same routines serve 32- and 64-bit
// integers; arithmetic that can grow is overflow-checked.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace posetk {

using Integer = std::int64_t;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<Integer>;
using IntVector = VectorX<Integer>;
using BoolMatrix = MatrixX<bool>;

template <typename T>
T checked_add(T a, T b) {
  static_assert(std::is_integral_v<T>);
  T r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

template <typename T>
T checked_sub(T a, T b) {
  static_assert(std::is_integral_v<T>);
  T r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

template <typename T>
T checked_mul(T a, T b) {
  static_assert(std::is_integral_v<T>);
  T r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

// Product with every partial sum checked.
template <typename DerivedA, typename DerivedB>
MatrixX<typename DerivedA::Scalar> checked_product(const Eigen::MatrixBase<DerivedA>& a,
                                                   const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedB::Scalar>);
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  MatrixX<Scalar> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      Scalar acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc = checked_add(acc, checked_mul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  }
  return out;
}

template <typename Derived>
MatrixX<typename Derived::Scalar> checked_power(const Eigen::MatrixBase<Derived>& a, unsigned exponent) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("power of a non-square matrix");
  MatrixX<Scalar> result = MatrixX<Scalar>::Identity(a.rows(), a.cols());
  MatrixX<Scalar> base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = checked_product(result, base);
    exponent >>= 1;
    if (exponent > 0) base = checked_product(base, base);
  }
  return result;
}

template <typename Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& a) {
  return (a.array() >= typename Derived::Scalar(0)).all();
}

// Fraction-free Gaussian elimination; every division is exact.
template <typename Derived>
typename Derived::Scalar bareiss_determinant(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  static_assert(std::is_integral_v<Scalar>);
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return 1;
  MatrixX<Scalar> m = a;
  Scalar sign = 1;
  Scalar previous = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0) ++pivot;
      if (pivot == n) return 0;
      m.row(k).swap(m.row(pivot));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = checked_sub(checked_mul(m(i, j), m(k, k)), checked_mul(m(i, k), m(k, j))) / previous;
      }
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Transposed cofactor matrix, so that A * adj(A) = det(A) * I.
template <typename Derived>
MatrixX<typename Derived::Scalar> adjugate(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("adjugate of a non-square matrix");
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  MatrixX<Scalar> minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // cofactor (j, i) lands at adj(i, j)
      for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
        if (r == j) continue;
        for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = a(r, c);
        }
        ++mr;
      }
      const Scalar cof = bareiss_determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  }
  return adj;
}

// Smallest j >= 1 with N^j = 0, or nullopt when N is not nilpotent.
template <typename Derived>
std::optional<int> nilpotency_index(const Eigen::MatrixBase<Derived>& n) {
  using Scalar = typename Derived::Scalar;
  if (n.rows() != n.cols()) throw std::invalid_argument("nilpotency of a non-square matrix");
  const Eigen::Index k = n.rows();
  if (k == 0) return 1;
  MatrixX<Scalar> power = n;
  for (int j = 1; j <= k; ++j) {
    if (power.isZero(0)) return j;
    power = checked_product(power, n);
  }
  return std::nullopt;
}

template <typename Derived>
BoolMatrix support(const Eigen::MatrixBase<Derived>& a) {
  return (a.array() != typename Derived::Scalar(0)).matrix();
}

inline BoolMatrix boolean_product(const BoolMatrix& a, const BoolMatrix& b) {
  BoolMatrix out = BoolMatrix::Constant(a.rows(), b.cols(), false);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (!a(i, k)) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) = out(i, j) || b(k, j);
    }
  }
  return out;
}

// The distinct supports of A, A^2, A^3, ... in order of first appearance.
// Boolean powers are eventually periodic, so the list is finite.
inline std::vector<BoolMatrix> boolean_powers(const BoolMatrix& a) {
  std::vector<BoolMatrix> powers;
  auto key = [](const BoolMatrix& m) { return std::vector<bool>(m.data(), m.data() + m.size()); };
  std::set<std::vector<bool>> seen;
  BoolMatrix current = a;
  while (seen.insert(key(current)).second) {
    powers.push_back(current);
    current = boolean_product(current, a);
  }
  return powers;
}

// Perron primitivity: some power is entrywise positive. Wielandt's bound
// k^2 - 2k + 2 limits the search.
template <typename Derived>
bool is_primitive_matrix(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols() || a.rows() == 0) return false;
  if (!is_nonnegative(a)) return false;
  const Eigen::Index k = a.rows();
  const Eigen::Index bound = k * k - 2 * k + 2;
  const BoolMatrix s = support(a);
  BoolMatrix power = s;
  for (Eigen::Index m = 1; m <= bound; ++m) {
    if (power.all()) return true;
    power = boolean_product(power, s);
  }
  return false;
}

}  // namespace posetk
