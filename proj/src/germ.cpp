#include "nsfrag/germ.hpp"

#include "nsfrag/error.hpp"
#include "nsfrag/expr.hpp"

#include <utility>

namespace nsfrag {

long Valuation::value() const {
  if (!value_) throw DomainError("valuation of zero is bottom");
  return *value_;
}

std::string Valuation::to_string() const { return value_ ? std::to_string(*value_) : "bottom"; }

const Rational& ExtendedShadow::value() const {
  if (kind_ != Kind::finite) throw DomainError("shadow is infinite");
  return value_;
}

std::string ExtendedShadow::to_string() const {
  switch (kind_) {
    case Kind::plus_infinity:
      return "+inf";
    case Kind::minus_infinity:
      return "-inf";
    case Kind::finite:
      break;
  }
  return nsfrag::to_string(value_);
}

std::string to_string(GermClass c) {
  switch (c) {
    case GermClass::zero:
      return "zero";
    case GermClass::standard_nonzero:
      return "standard-nonzero";
    case GermClass::infinitesimal_nonzero:
      return "infinitesimal-nonzero";
    case GermClass::appreciable_nonstandard:
      return "appreciable-nonstandard";
    case GermClass::unlimited_positive:
      return "unlimited-positive";
    case GermClass::unlimited_negative:
      return "unlimited-negative";
  }
  return "?";
}

Germ::Germ(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZero("germ with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = Polynomial::gcd(num, den);
  if (g.degree() > 0) {
    num = Polynomial::divmod(num, g).first;
    den = Polynomial::divmod(den, g).first;
  }
  Rational lead = den.leading();
  num_ = num.scaled(Rational(1) / lead);
  den_ = den.scaled(Rational(1) / lead);
}

Rational Germ::constant_value() const {
  if (!is_constant()) throw DomainError("germ " + to_string() + " is not standard");
  return num_.coeff(0);
}

Rational Germ::evaluate(const Rational& n) const {
  Rational d = den_.evaluate(n);
  if (d == 0) throw DivisionByZero("germ " + to_string() + " has a pole at " + nsfrag::to_string(n));
  return num_.evaluate(n) / d;
}

Germ operator+(const Germ& a, const Germ& b) {
  if (a.den_ == b.den_) return Germ(a.num_ + b.num_, a.den_);
  return Germ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Germ operator-(const Germ& a, const Germ& b) { return a + (-b); }

Germ operator*(const Germ& a, const Germ& b) { return Germ(a.num_ * b.num_, a.den_ * b.den_); }

Germ operator/(const Germ& a, const Germ& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero germ");
  return Germ(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Germ& a, const Germ& b) {
  // Denominators are monic, so the eventual sign of a - b is the sign of the
  // leading numerator coefficient.
  Germ d = a - b;
  if (d.is_zero()) return std::strong_ordering::equal;
  return d.num_.leading() > 0 ? std::strong_ordering::greater : std::strong_ordering::less;
}

Germ Germ::pow(long e) const {
  if (e < 0) return reciprocal().pow(-e);
  Germ result(1);
  Germ base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

Germ Germ::reciprocal() const { return Germ(1) / *this; }

Germ Germ::shifted(const Rational& shift) const { return Germ(num_.shifted(shift), den_.shifted(shift)); }

std::string Germ::to_string(char var) const { return expr::format(expr::from_germ(*this, var)); }

Germ arith(const Germ& a, const Germ& b, GermOp op) {
  switch (op) {
    case GermOp::add:
      return a + b;
    case GermOp::sub:
      return a - b;
    case GermOp::mul:
      return a * b;
    case GermOp::div:
      return a / b;
  }
  throw InvalidArgument("unknown germ operation");
}

std::strong_ordering compare(const Germ& a, const Germ& b) { return a <=> b; }

int sign(const Germ& a) {
  if (a.is_zero()) return 0;
  return a.numerator().leading() > 0 ? 1 : -1;
}

Germ abs(const Germ& a) { return sign(a) < 0 ? -a : a; }

Valuation valuation(const Germ& a) {
  if (a.is_zero()) return Valuation::bottom();
  return Valuation(a.numerator().degree() - a.denominator().degree());
}

ExtendedShadow shadow(const Germ& a) {
  if (a.is_zero()) return Rational(0);
  long v = valuation(a).value();
  if (v > 0) return sign(a) > 0 ? ExtendedShadow::plus_infinity() : ExtendedShadow::minus_infinity();
  if (v < 0) return Rational(0);
  return Rational(a.numerator().leading() / a.denominator().leading());
}

GermClass classify(const Germ& a) {
  if (a.is_zero()) return GermClass::zero;
  if (a.is_constant()) return GermClass::standard_nonzero;
  long v = valuation(a).value();
  if (v < 0) return GermClass::infinitesimal_nonzero;
  if (v == 0) return GermClass::appreciable_nonstandard;
  return sign(a) > 0 ? GermClass::unlimited_positive : GermClass::unlimited_negative;
}

bool is_limited(const Germ& a) { return valuation(a) <= Valuation(0); }

bool is_infinitesimal(const Germ& a) { return valuation(a) < Valuation(0); }

bool is_standard(const Germ& a) { return a.is_constant(); }

bool infinitely_close(const Germ& a, const Germ& b) { return is_infinitesimal(a - b); }

Integer eventually_threshold(const Germ& a) {
  if (a.is_zero()) throw ZeroGermError("eventual threshold of the zero germ");
  // Past the root bound of num*den neither factor vanishes, so both keep the
  // sign of their leading coefficient.
  Rational bound = (a.numerator() * a.denominator()).root_bound();
  Integer n0 = ceil(bound);
  return n0 < 0 ? Integer(0) : n0;
}

}  // namespace nsfrag
