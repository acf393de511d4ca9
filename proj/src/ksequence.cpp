#include "nsfrag/ksequence.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>
#include <vector>

namespace nsfrag {

KSequence::KSequence(const Germ& rational_part) { add_term(1, rational_part); }

KSequence KSequence::geometric(const Rational& c, const Rational& base) {
  if (base == 0) throw InvalidArgument("geometric base must be nonzero");
  KSequence s;
  s.add_term(base, Germ(c));
  return s;
}

void KSequence::add_term(const Rational& base, const Germ& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(base, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool KSequence::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Germ KSequence::rational_part() const {
  auto it = terms_.find(Rational(1));
  return it == terms_.end() ? Germ() : it->second;
}

Rational KSequence::evaluate(const Integer& k) const {
  if (!k.fits_slong_p()) throw InvalidArgument("index out of range");
  long kk = k.get_si();
  Rational acc = 0;
  for (const auto& [base, coeff] : terms_) acc += coeff.evaluate(Rational(k)) * nsfrag::pow(base, kk);
  return acc;
}

ExtendedShadow KSequence::limit() const {
  Rational dominant = 1;
  for (const auto& [base, coeff] : terms_)
    if (abs(base) > dominant) dominant = abs(base);
  if (dominant > 1) {
    auto pos = terms_.find(dominant);
    auto neg = terms_.find(Rational(-dominant));
    if (neg != terms_.end()) throw NoClosedForm("sequence oscillates without a limit");
    return sign(pos->second) > 0 ? ExtendedShadow::plus_infinity() : ExtendedShadow::minus_infinity();
  }
  if (auto alt = terms_.find(Rational(-1)); alt != terms_.end()) {
    ExtendedShadow s = shadow(alt->second);
    if (!s.is_finite() || s.value() != 0) throw NoClosedForm("sequence oscillates without a limit");
  }
  return shadow(rational_part());
}

KSequence KSequence::partial_sums(const Integer& from) const {
  if (!from.fits_slong_p()) throw InvalidArgument("index out of range");
  KSequence out;
  for (const auto& [base, coeff] : terms_) {
    if (base == 1) throw NoClosedForm("partial sums of a rational sequence have no closed form here");
    if (!coeff.is_constant()) throw NoClosedForm("partial sums need constant geometric coefficients");
    Rational c = coeff.constant_value();
    Rational ratio = c / (1 - base);
    out.add_term(1, Germ(ratio * nsfrag::pow(base, from.get_si())));
    out.add_term(base, Germ(-ratio * base));
  }
  return out;
}

KSequence KSequence::operator-() const {
  KSequence out;
  for (const auto& [base, coeff] : terms_) out.add_term(base, -coeff);
  return out;
}

KSequence operator+(const KSequence& a, const KSequence& b) {
  KSequence out = a;
  for (const auto& [base, coeff] : b.terms_) out.add_term(base, coeff);
  return out;
}

KSequence operator-(const KSequence& a, const KSequence& b) { return a + (-b); }

KSequence operator*(const KSequence& a, const KSequence& b) {
  KSequence out;
  for (const auto& [ra, ca] : a.terms_)
    for (const auto& [rb, cb] : b.terms_) out.add_term(ra * rb, ca * cb);
  return out;
}

KSequence operator/(const KSequence& a, const KSequence& b) {
  if (b.terms_.empty()) throw DivisionByZero("division by the zero sequence");
  if (b.terms_.size() != 1) throw NoClosedForm("division by a sum of geometric terms");
  const auto& [base, coeff] = *b.terms_.begin();
  KSequence inv;
  inv.add_term(Rational(1) / base, coeff.reciprocal());
  return a * inv;
}

KSequence KSequence::pow(long e) const {
  if (e < 0) return (KSequence(Rational(1)) / *this).pow(-e);
  KSequence result(Rational(1));
  for (long i = 0; i < e; ++i) result = result * *this;
  return result;
}

std::string KSequence::to_string() const {
  if (terms_.empty()) return "0";
  // Rational part first, then geometric terms by base.
  std::vector<std::pair<Rational, Germ>> order(terms_.begin(), terms_.end());
  std::stable_partition(order.begin(), order.end(), [](const auto& t) { return t.first == 1; });
  std::string out;
  for (const auto& [base, coeff] : order) {
    std::string term;
    bool negative = sign(coeff) < 0;
    Germ mag = negative ? -coeff : coeff;
    std::string c = mag.to_string('k');
    bool atomic = c.find_first_of(" /") == std::string::npos;
    if (base == 1) {
      term = c;
    } else {
      std::string power = "(" + nsfrag::to_string(base) + ")^k";
      term = mag == Germ(1) ? power : (atomic ? c : "(" + c + ")") + "*" + power;
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

}  // namespace nsfrag
