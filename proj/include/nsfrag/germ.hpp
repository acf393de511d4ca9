#pragma once

#include "nsfrag/polynomial.hpp"
#include "nsfrag/rational.hpp"

#include <compare>
#include <optional>
#include <string>

namespace nsfrag {

// Growth order of a germ: deg(numerator) - deg(denominator), with a bottom
// element for the zero germ. Bottom is below every integer and absorbs
// addition, so valuation(a*b) = valuation(a) + valuation(b) holds for all a, b.
class Valuation {
 public:
  static Valuation bottom() { return Valuation(); }
  explicit Valuation(long v) : value_(v) {}

  bool is_bottom() const noexcept { return !value_.has_value(); }
  long value() const;

  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.is_bottom() || b.is_bottom()) return bottom();
    return Valuation(*a.value_ + *b.value_);
  }
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_bottom() || b.is_bottom()) return b.is_bottom() <=> a.is_bottom();
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const;

 private:
  Valuation() = default;
  std::optional<long> value_;
};

// Standard part with the conventional infinite markers for unlimited values.
class ExtendedShadow {
 public:
  enum class Kind { finite, plus_infinity, minus_infinity };

  ExtendedShadow(const Rational& value) : kind_(Kind::finite), value_(value) {}  // NOLINT
  static ExtendedShadow plus_infinity() { return ExtendedShadow(Kind::plus_infinity); }
  static ExtendedShadow minus_infinity() { return ExtendedShadow(Kind::minus_infinity); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  const Rational& value() const;

  friend bool operator==(const ExtendedShadow&, const ExtendedShadow&) = default;
  std::string to_string() const;  // "2", "-1/3", "+inf", "-inf"

 private:
  explicit ExtendedShadow(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

enum class GermClass {
  zero,
  standard_nonzero,
  infinitesimal_nonzero,
  appreciable_nonstandard,
  unlimited_positive,
  unlimited_negative,
};

std::string to_string(GermClass c);

// A definable hyperrational: a rational function of the index, read at the
// nonstandard index w. Always held in canonical form: reduced, with a monic
// denominator, so structural equality is mathematical equality.
class Germ {
 public:
  Germ() : den_(1) {}
  Germ(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Germ(long c) : Germ(Rational(c)) {}            // NOLINT(google-explicit-constructor)
  Germ(Polynomial num, Polynomial den);

  // The index itself, w.
  static Germ omega() { return Germ(Polynomial::x(), Polynomial(1)); }

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  // Value of a constant germ.
  Rational constant_value() const;

  // Exact value of the defining sequence at index n. Throws DivisionByZero at poles.
  Rational evaluate(const Rational& n) const;

  Germ operator-() const { return Germ(-num_, den_); }
  friend Germ operator+(const Germ& a, const Germ& b);
  friend Germ operator-(const Germ& a, const Germ& b);
  friend Germ operator*(const Germ& a, const Germ& b);
  friend Germ operator/(const Germ& a, const Germ& b);
  Germ& operator+=(const Germ& b) { return *this = *this + b; }
  Germ& operator-=(const Germ& b) { return *this = *this - b; }
  Germ& operator*=(const Germ& b) { return *this = *this * b; }
  Germ& operator/=(const Germ& b) { return *this = *this / b; }

  friend bool operator==(const Germ&, const Germ&) = default;
  // Eventual dominance.
  friend std::strong_ordering operator<=>(const Germ& a, const Germ& b);

  Germ pow(long e) const;
  Germ reciprocal() const;
  // g(x + shift)
  Germ shifted(const Rational& shift) const;

  // Canonical text in the expression grammar, e.g. "(2*w^2 + 3)/(w^2 - w)".
  std::string to_string(char var = 'w') const;

 private:
  Polynomial num_;
  Polynomial den_;
};

enum class GermOp { add, sub, mul, div };

Germ arith(const Germ& a, const Germ& b, GermOp op);
std::strong_ordering compare(const Germ& a, const Germ& b);
int sign(const Germ& a);
Germ abs(const Germ& a);
Valuation valuation(const Germ& a);
ExtendedShadow shadow(const Germ& a);
GermClass classify(const Germ& a);

bool is_limited(const Germ& a);
bool is_infinitesimal(const Germ& a);  // includes zero
bool is_standard(const Germ& a);
// a - b is infinitesimal
bool infinitely_close(const Germ& a, const Germ& b);

// N0 such that for every integer n >= N0 the denominator is nonzero and the
// sign of a(n) equals the eventual sign. Throws ZeroGermError for a = 0.
Integer eventually_threshold(const Germ& a);

}  // namespace nsfrag
