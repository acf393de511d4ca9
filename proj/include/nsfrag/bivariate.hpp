#pragma once

#include "nsfrag/germ.hpp"
#include "nsfrag/polynomial.hpp"

#include <string>
#include <vector>

namespace nsfrag {

// Polynomial in (k, w): sum over i of k^i * rows()[i](w).
class BivariatePolynomial {
 public:
  BivariatePolynomial() = default;
  explicit BivariatePolynomial(std::vector<Polynomial> rows);
  BivariatePolynomial(const Polynomial& in_w) : BivariatePolynomial(std::vector<Polynomial>{in_w}) {}  // NOLINT
  BivariatePolynomial(const Rational& c) : BivariatePolynomial(Polynomial(c)) {}                       // NOLINT

  static BivariatePolynomial k() { return BivariatePolynomial(std::vector<Polynomial>{Polynomial(), Polynomial(1)}); }
  static BivariatePolynomial w() { return BivariatePolynomial(Polynomial::x()); }

  const std::vector<Polynomial>& rows() const noexcept { return rows_; }
  bool is_zero() const noexcept { return rows_.empty(); }
  bool depends_on_w() const;

  // Polynomial in w after fixing k.
  Polynomial at_k(const Rational& k) const;
  // k := w
  Polynomial diagonal() const;
  // Valid only when the polynomial does not depend on w; the result is a
  // polynomial in k.
  Polynomial as_k_polynomial() const;
  // Coefficient of w^j, as a polynomial in k.
  Polynomial w_coefficient(std::size_t j) const;
  long w_degree() const;

  BivariatePolynomial operator-() const;
  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b);
  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

 private:
  void trim();
  std::vector<Polynomial> rows_;
};

// A k-indexed family of germs F(k, w) = numerator / denominator. Not reduced:
// bivariate gcds are never needed, every consumer either fixes k or takes
// the diagonal and canonicalizes there.
class BivariateGerm {
 public:
  BivariateGerm() : den_(Rational(1)) {}
  BivariateGerm(BivariatePolynomial num, BivariatePolynomial den);
  BivariateGerm(const Germ& g);  // NOLINT(google-explicit-constructor)
  BivariateGerm(const Rational& c) : BivariateGerm(Germ(c)) {}  // NOLINT

  static BivariateGerm k() { return BivariateGerm(BivariatePolynomial::k(), Rational(1)); }
  static BivariateGerm w() { return BivariateGerm(BivariatePolynomial::w(), Rational(1)); }

  const BivariatePolynomial& numerator() const noexcept { return num_; }
  const BivariatePolynomial& denominator() const noexcept { return den_; }
  bool depends_on_w() const { return num_.depends_on_w() || den_.depends_on_w(); }

  // F(k, w) as a germ in w. Throws DegenerateDiagonal if the denominator
  // vanishes identically for this k.
  Germ at(const Rational& k) const;
  // F(w, w); throws DegenerateDiagonal when the denominator vanishes on the diagonal.
  Germ diagonal() const;
  // The family as a rational function of k alone (requires no w dependence);
  // the returned germ's indeterminate is k.
  Germ as_k_germ() const;

  // Smallest-first list of integers k >= from where at(k) is undefined, or
  // empty. Searches up to the root bound of the gcd of the w-coefficients of
  // the denominator, which contains every such k.
  std::vector<Integer> undefined_indices(const Integer& from) const;

  BivariateGerm operator-() const { return BivariateGerm(-num_, den_); }
  friend BivariateGerm operator+(const BivariateGerm& a, const BivariateGerm& b);
  friend BivariateGerm operator-(const BivariateGerm& a, const BivariateGerm& b);
  friend BivariateGerm operator*(const BivariateGerm& a, const BivariateGerm& b);
  friend BivariateGerm operator/(const BivariateGerm& a, const BivariateGerm& b);
  BivariateGerm pow(long e) const;

 private:
  BivariatePolynomial num_;
  BivariatePolynomial den_;
};

// diag(F) = F(w, w) in canonical form.
Germ diagonal(const BivariateGerm& family);

}  // namespace nsfrag
