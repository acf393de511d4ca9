#include "nsfrag/extnum.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>

namespace nsfrag::ext {

long Neutrix::grade() const {
  if (kind_ != Kind::graded) throw InvalidArgument("neutrix " + to_string() + " has no grade");
  return grade_;
}

bool Neutrix::contains(const Germ& x) const {
  switch (kind_) {
    case Kind::zero:
      return x.is_zero();
    case Kind::all:
      return true;
    case Kind::graded:
      return valuation(x) <= Valuation(grade_);
  }
  return false;
}

std::string Neutrix::to_string() const {
  switch (kind_) {
    case Kind::zero:
      return "0";
    case Kind::all:
      return "all";
    case Kind::graded:
      if (grade_ == -1) return "M0";
      if (grade_ == 0) return "G0";
      return "N(" + std::to_string(grade_) + ")";
  }
  return "?";
}

Neutrix neutrix_ops(const Neutrix& n, const Neutrix& m, NeutrixOp op) {
  using K = Neutrix::Kind;
  if (op == NeutrixOp::add) {
    if (n.kind() == K::all || m.kind() == K::all) return Neutrix::all();
    if (n.kind() == K::zero) return m;
    if (m.kind() == K::zero) return n;
    return Neutrix::graded(std::max(n.grade(), m.grade()));
  }
  if (n.kind() == K::zero || m.kind() == K::zero) return Neutrix::zero();
  if (n.kind() == K::all || m.kind() == K::all) return Neutrix::all();
  return Neutrix::graded(n.grade() + m.grade());
}

Neutrix scale(const Germ& a, const Neutrix& n) {
  if (a.is_zero() || n.kind() == Neutrix::Kind::zero) return Neutrix::zero();
  if (n.kind() == Neutrix::Kind::all) return n;
  return Neutrix::graded(n.grade() + valuation(a).value());
}

Germ truncate_above(const Germ& g, long k) {
  Germ rest = g;
  Germ kept = 0;
  const Germ w = Germ::omega();
  while (!rest.is_zero()) {
    long v = valuation(rest).value();
    if (v <= k) break;
    Germ term = Germ(rest.numerator().leading() / rest.denominator().leading()) * w.pow(v);
    kept += term;
    rest -= term;
  }
  return kept;
}

ExternalNumber::ExternalNumber(const Germ& center, Neutrix neutrix) : neutrix_(neutrix) {
  switch (neutrix_.kind()) {
    case Neutrix::Kind::zero:
      center_ = center;
      break;
    case Neutrix::Kind::all:
      center_ = 0;
      break;
    case Neutrix::Kind::graded:
      center_ = truncate_above(center, neutrix_.grade());
      break;
  }
}

std::string ExternalNumber::to_string() const {
  if (neutrix_.kind() == Neutrix::Kind::zero) return center_.to_string();
  return center_.to_string() + " + " + neutrix_.to_string();
}

ExternalNumber extnum_add(const ExternalNumber& x, const ExternalNumber& y) {
  return ExternalNumber(x.center() + y.center(), neutrix_ops(x.neutrix(), y.neutrix(), NeutrixOp::add));
}

ExternalNumber extnum_mul(const ExternalNumber& x, const ExternalNumber& y) {
  Neutrix n = neutrix_ops(scale(x.center(), y.neutrix()), scale(y.center(), x.neutrix()), NeutrixOp::add);
  n = neutrix_ops(n, neutrix_ops(x.neutrix(), y.neutrix(), NeutrixOp::mul), NeutrixOp::add);
  return ExternalNumber(x.center() * y.center(), n);
}

ExternalNumber extnum_neg(const ExternalNumber& x) { return ExternalNumber(-x.center(), x.neutrix()); }

std::string to_string(ExtOrder o) {
  switch (o) {
    case ExtOrder::less:
      return "less";
    case ExtOrder::greater:
      return "greater";
    case ExtOrder::overlapping:
      return "overlapping";
  }
  return "?";
}

ExtOrder extnum_order(const ExternalNumber& x, const ExternalNumber& y) {
  Neutrix joint = neutrix_ops(x.neutrix(), y.neutrix(), NeutrixOp::add);
  Germ d = y.center() - x.center();
  if (joint.contains(d)) return ExtOrder::overlapping;
  return sign(d) > 0 ? ExtOrder::less : ExtOrder::greater;
}

}  // namespace nsfrag::ext
