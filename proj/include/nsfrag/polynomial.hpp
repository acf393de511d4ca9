#pragma once

#include "nsfrag/rational.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nsfrag {

// Dense univariate polynomial over the rationals. coeffs()[i] multiplies x^i;
// trailing zeros are always trimmed, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT

  static Polynomial monomial(const Rational& c, std::size_t degree);
  static Polynomial x() { return monomial(1, 1); }

  std::span<const Rational> coeffs() const noexcept { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  // -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const Rational& leading() const;

  Rational evaluate(const Rational& at) const;
  // p(x + shift)
  Polynomial shifted(const Rational& shift) const;
  Polynomial scaled(const Rational& factor) const;
  Polynomial monic() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  // Euclidean division: a = q*b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  // Monic gcd; gcd(0, 0) = 0.
  static Polynomial gcd(Polynomial a, Polynomial b);

  // Cauchy bound: every real root r satisfies |r| < 1 + max |c_i / c_n|.
  // Requires a nonzero polynomial; constants return 0.
  Rational root_bound() const;

  std::string to_string(char var = 'w') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace nsfrag
