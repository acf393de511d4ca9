#pragma once

#include "nsfrag/germ.hpp"
#include "nsfrag/rational.hpp"

#include <map>
#include <string>

namespace nsfrag {

// Standard sequence of the form  sum over r of c_r(k) * r^k,  where each
// coefficient c_r is a rational function of k (stored as a Germ whose
// indeterminate is k) and r ranges over nonzero rationals. The r = 1 term is
// the purely rational part. Closed under + - *, and under division by a
// single term, which is what interval schemas with 2^(-k) endpoints need.
class KSequence {
 public:
  KSequence() = default;
  KSequence(const Germ& rational_part);       // NOLINT(google-explicit-constructor)
  KSequence(const Rational& c) : KSequence(Germ(c)) {}  // NOLINT

  static KSequence k() { return KSequence(Germ::omega()); }
  // c * base^k
  static KSequence geometric(const Rational& c, const Rational& base);

  const std::map<Rational, Germ>& terms() const noexcept { return terms_; }
  bool is_rational() const;
  Germ rational_part() const;

  Rational evaluate(const Integer& k) const;

  // Limit as k -> infinity over the standard integers. Geometric terms with
  // |r| < 1 vanish; |r| > 1 terms dominate. Throws NoClosedForm when the
  // sequence oscillates without a limit (a nonzero r = -1 term, or a
  // dominant negative base).
  ExtendedShadow limit() const;

  // Sum over j = from..k of this sequence, as a sequence in k. Supported when
  // every term has a constant coefficient and the r = 1 part is zero;
  // otherwise NoClosedForm.
  KSequence partial_sums(const Integer& from) const;

  KSequence operator-() const;
  friend KSequence operator+(const KSequence& a, const KSequence& b);
  friend KSequence operator-(const KSequence& a, const KSequence& b);
  friend KSequence operator*(const KSequence& a, const KSequence& b);
  friend KSequence operator/(const KSequence& a, const KSequence& b);
  friend bool operator==(const KSequence&, const KSequence&) = default;
  KSequence pow(long e) const;

  std::string to_string() const;

 private:
  void add_term(const Rational& base, const Germ& coeff);
  std::map<Rational, Germ> terms_;
};

}  // namespace nsfrag
