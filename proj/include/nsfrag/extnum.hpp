#pragma once

#include "nsfrag/germ.hpp"

#include <string>

// Neutrices and external numbers over the germ field, with Minkowski arithmetic.
namespace nsfrag::ext {

// A convex additive subgroup of the germ field: {0}, everything, or
// graded(k) = {x : valuation(x) <= k}. The monad M0 is graded(-1) and the
// galaxy G0 is graded(0).
class Neutrix {
 public:
  enum class Kind { zero, graded, all };

  static Neutrix zero() { return Neutrix(Kind::zero, 0); }
  static Neutrix all() { return Neutrix(Kind::all, 0); }
  static Neutrix graded(long k) { return Neutrix(Kind::graded, k); }
  static Neutrix monad() { return graded(-1); }
  static Neutrix galaxy() { return graded(0); }

  Kind kind() const noexcept { return kind_; }
  long grade() const;
  bool contains(const Germ& x) const;
  std::string to_string() const;  // "0", "M0", "G0", "N(k)", "all"

  friend bool operator==(const Neutrix&, const Neutrix&) = default;

 private:
  Neutrix(Kind k, long g) : kind_(k), grade_(g) {}
  Kind kind_;
  long grade_;
};

enum class NeutrixOp { add, mul };

Neutrix neutrix_ops(const Neutrix& n, const Neutrix& m, NeutrixOp op);
Neutrix scale(const Germ& a, const Neutrix& n);

// Center plus neutrix, canonical: center terms of valuation <= the grade are
// absorbed (only the Laurent terms above the grade are kept); the center of
// the whole field is 0.
class ExternalNumber {
 public:
  ExternalNumber(const Germ& center, Neutrix neutrix);
  ExternalNumber(const Germ& center) : ExternalNumber(center, Neutrix::zero()) {}  // NOLINT

  const Germ& center() const noexcept { return center_; }
  const Neutrix& neutrix() const noexcept { return neutrix_; }
  bool contains(const Germ& x) const { return neutrix_.contains(x - center_); }
  std::string to_string() const;

  friend bool operator==(const ExternalNumber&, const ExternalNumber&) = default;

 private:
  Germ center_;
  Neutrix neutrix_;
};

// Sum of the Laurent terms of g at infinity with exponent > k.
Germ truncate_above(const Germ& g, long k);

ExternalNumber extnum_add(const ExternalNumber& x, const ExternalNumber& y);
ExternalNumber extnum_mul(const ExternalNumber& x, const ExternalNumber& y);
ExternalNumber extnum_neg(const ExternalNumber& x);

enum class ExtOrder { less, greater, overlapping };
std::string to_string(ExtOrder o);
ExtOrder extnum_order(const ExternalNumber& x, const ExternalNumber& y);

}  // namespace nsfrag::ext
