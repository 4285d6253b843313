#pragma once

#include "symdyn/scalar.hpp"

#include <string>
#include <utility>
#include <vector>

namespace symdyn {

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
template <class Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Polynomial constant(const Scalar& value) { return Polynomial({value}); }
  static Polynomial x() { return Polynomial({Scalar(0), Scalar(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coefficients() const { return c_; }
  Scalar coefficient(int power) const {
    return power >= 0 && power < static_cast<int>(c_.size()) ? c_[power] : Scalar(0);
  }
  Scalar leading() const { return c_.empty() ? Scalar(0) : c_.back(); }

  template <class Value>
  Value operator()(const Value& at) const {
    Value acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + Value(*it);
    return acc;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> out(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<Scalar> out = a.c_;
    for (auto& v : out) v = -v;
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> out(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Scalar& s, const Polynomial& a) {
    std::vector<Scalar> out = a.c_;
    for (auto& v : out) v *= s;
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Scalar(static_cast<long>(i));
    return Polynomial(std::move(out));
  }

  /// Divides out every factor of x.
  Polynomial without_zero_roots() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return Polynomial(std::vector<Scalar>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  /// Human-readable form such as "x^2 - x - 1".
  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

RatPolynomial to_rational(const IntPolynomial& p);

/// Quotient and remainder over Q. b must be nonzero.
std::pair<RatPolynomial, RatPolynomial> divmod(const RatPolynomial& a, const RatPolynomial& b);
/// Monic gcd over Q (zero if both are zero).
RatPolynomial gcd(RatPolynomial a, RatPolynomial b);
RatPolynomial monic(const RatPolynomial& p);
/// p / gcd(p, p'), monic.
RatPolynomial squarefree_part(const RatPolynomial& p);

/// Sturm chain p, p', -rem(p, p'), ... for a squarefree p.
class SturmSequence {
 public:
  explicit SturmSequence(const RatPolynomial& squarefree);

  /// Number of distinct real roots in the half-open interval (lo, hi].
  int count_roots(const Rational& lo, const Rational& hi) const;
  const RatPolynomial& polynomial() const { return chain_.front(); }

 private:
  int sign_changes(const Rational& at) const;
  std::vector<RatPolynomial> chain_;
};

template <class Scalar>
std::string Polynomial<Scalar>::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int power = degree(); power >= 0; --power) {
    Scalar coeff = c_[static_cast<std::size_t>(power)];
    if (coeff == 0) continue;
    const bool negative = coeff < 0;
    Scalar magnitude = negative ? Scalar(-coeff) : coeff;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    const bool unit = magnitude == 1;
    if (!unit || power == 0) out += to_string(magnitude);
    if (power >= 1) out += var;
    if (power >= 2) out += "^" + std::to_string(power);
  }
  return out;
}

}  // namespace symdyn
