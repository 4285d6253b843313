#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace symdyn {

namespace mp = boost::multiprecision;

// Expression templates off: Eigen needs plain value types as scalars.
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

/// Exact equality; Eigen's isApprox/isZero are tolerance based.
template <class Derived1, class Derived2>
bool exactly_equal(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <class Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) return false;
  return true;
}

template <class Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) < 0) return false;
  return true;
}

template <class Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  return Matrix<Scalar>::Identity(n, n);
}

template <class Scalar>
Matrix<Scalar> matrix_power(const Matrix<Scalar>& m, unsigned long long p) {
  Matrix<Scalar> result = identity<Scalar>(m.rows());
  Matrix<Scalar> base = m;
  while (p != 0) {
    if (p & 1u) result = result * base;
    p >>= 1;
    if (p != 0) base = base * base;
  }
  return result;
}

/// Kronecker product with blocks a(i,j)*b, row index i*b.rows()+l.
template <class Scalar>
Matrix<Scalar> kronecker(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

bool is_integral(const Rational& q);
bool is_integral(const RatMatrix& m);
/// Requires is_integral(m).
IntMatrix to_integer(const RatMatrix& m);

Integer lcm_of_denominators(const RatMatrix& m);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
/// Parses "3", "-3/2", "4/6" (normalized). Throws Error(Parse) on bad input.
Rational parse_rational(std::string_view text);

IntMatrix int_matrix(const std::vector<std::vector<long long>>& rows);

}  // namespace symdyn
