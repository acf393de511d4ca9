#include "nsfrag/coding.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>

namespace nsfrag::coding {

bool satisfies_lower(const Bound& b, const Germ& a) {
  using K = Bound::Kind;
  switch (b.kind) {
    case K::unbounded:
      return true;
    case K::closed:
      return a >= b.at;
    case K::open:
      return a > b.at;
    case K::halo_closed:
      return a >= b.at || infinitely_close(a, b.at);
    case K::halo_open:
      return a > b.at && !infinitely_close(a, b.at);
    case K::past_every:
      return classify(a) == GermClass::unlimited_positive;
    case K::past_some:
      return classify(a) != GermClass::unlimited_negative;
  }
  return false;
}

bool satisfies_upper(const Bound& b, const Germ& a) {
  using K = Bound::Kind;
  switch (b.kind) {
    case K::unbounded:
      return true;
    case K::closed:
      return a <= b.at;
    case K::open:
      return a < b.at;
    case K::halo_closed:
      return a <= b.at || infinitely_close(a, b.at);
    case K::halo_open:
      return a < b.at && !infinitely_close(a, b.at);
    case K::past_every:
      return classify(a) == GermClass::unlimited_negative;
    case K::past_some:
      return classify(a) != GermClass::unlimited_positive;
  }
  return false;
}

Predicate Predicate::always() { return Predicate(); }

Predicate Predicate::never() {
  Predicate p;
  p.kind_ = Kind::never;
  return p;
}

Predicate Predicate::limited() {
  Predicate p;
  p.kind_ = Kind::limited;
  return p;
}

Predicate Predicate::infinitesimal() {
  Predicate p;
  p.kind_ = Kind::infinitesimal;
  return p;
}

Predicate Predicate::standard() {
  Predicate p;
  p.kind_ = Kind::standard;
  return p;
}

Predicate Predicate::interval(Bound lo, Bound hi) {
  if (lo.kind == Bound::Kind::unbounded && hi.kind == Bound::Kind::unbounded) return always();
  Predicate p;
  p.kind_ = Kind::interval;
  p.lo_ = std::move(lo);
  p.hi_ = std::move(hi);
  return p;
}

Predicate Predicate::negation(Predicate q) {
  if (q.kind_ == Kind::always) return never();
  if (q.kind_ == Kind::never) return always();
  if (q.kind_ == Kind::negation) return q.children_[0];
  Predicate p;
  p.kind_ = Kind::negation;
  p.children_.push_back(std::move(q));
  return p;
}

Predicate Predicate::conjunction(Predicate a, Predicate b) {
  if (a.kind_ == Kind::never || b.kind_ == Kind::never) return never();
  if (a.kind_ == Kind::always) return b;
  if (b.kind_ == Kind::always) return a;
  if (a == b) return a;
  Predicate p;
  p.kind_ = Kind::conjunction;
  p.children_ = {std::move(a), std::move(b)};
  return p;
}

Predicate Predicate::disjunction(Predicate a, Predicate b) {
  if (a.kind_ == Kind::always || b.kind_ == Kind::always) return always();
  if (a.kind_ == Kind::never) return b;
  if (b.kind_ == Kind::never) return a;
  if (a == b) return a;
  Predicate p;
  p.kind_ = Kind::disjunction;
  p.children_ = {std::move(a), std::move(b)};
  return p;
}

bool Predicate::holds(const Germ& a) const {
  switch (kind_) {
    case Kind::always:
      return true;
    case Kind::never:
      return false;
    case Kind::limited:
      return is_limited(a);
    case Kind::infinitesimal:
      return is_infinitesimal(a);
    case Kind::standard:
      return is_standard(a);
    case Kind::interval:
      return satisfies_lower(lo_, a) && satisfies_upper(hi_, a);
    case Kind::negation:
      return !children_[0].holds(a);
    case Kind::conjunction:
      return children_[0].holds(a) && children_[1].holds(a);
    case Kind::disjunction:
      return children_[0].holds(a) || children_[1].holds(a);
  }
  return false;
}

void Predicate::endpoints(std::vector<Germ>& out) const {
  if (kind_ == Kind::interval) {
    if (lo_.kind != Bound::Kind::unbounded && lo_.kind != Bound::Kind::past_every && lo_.kind != Bound::Kind::past_some)
      out.push_back(lo_.at);
    if (hi_.kind != Bound::Kind::unbounded && hi_.kind != Bound::Kind::past_every && hi_.kind != Bound::Kind::past_some)
      out.push_back(hi_.at);
  }
  for (const auto& c : children_) c.endpoints(out);
}

namespace {

// Halo bounds print with the monad and galaxy literals: "(0 + M0" is strictly
// above the monad of 0, "[0 - M0" includes it; "(G0" lies beyond every
// standard number, "[G0" beyond some.
std::string lower_text(const Bound& b) {
  using K = Bound::Kind;
  switch (b.kind) {
    case K::unbounded:
      return "(-inf";
    case K::closed:
      return "[" + b.at.to_string();
    case K::open:
      return "(" + b.at.to_string();
    case K::halo_closed:
      return "[" + b.at.to_string() + " - M0";
    case K::halo_open:
      return "(" + b.at.to_string() + " + M0";
    case K::past_every:
      return "(G0";
    case K::past_some:
      return "[G0";
  }
  return "?";
}

std::string upper_text(const Bound& b) {
  using K = Bound::Kind;
  switch (b.kind) {
    case K::unbounded:
      return "+inf)";
    case K::closed:
      return b.at.to_string() + "]";
    case K::open:
      return b.at.to_string() + ")";
    case K::halo_closed:
      return b.at.to_string() + " + M0]";
    case K::halo_open:
      return b.at.to_string() + " - M0)";
    case K::past_every:
      return "G0)";
    case K::past_some:
      return "G0]";
  }
  return "?";
}

int precedence(const Predicate& p) {
  switch (p.kind()) {
    case Predicate::Kind::disjunction:
      return 1;
    case Predicate::Kind::conjunction:
      return 2;
    default:
      return 3;
  }
}

std::string wrap(const Predicate& p, int min) {
  std::string s = p.to_string();
  return precedence(p) < min ? "(" + s + ")" : s;
}

}  // namespace

std::string Predicate::to_string() const {
  switch (kind_) {
    case Kind::always:
      return "all";
    case Kind::never:
      return "empty";
    case Kind::limited:
      return "limited";
    case Kind::infinitesimal:
      return "inf";
    case Kind::standard:
      return "std";
    case Kind::interval:
      if (lo_.kind == Bound::Kind::closed && hi_.kind == Bound::Kind::closed && lo_.at == hi_.at)
        return "{" + lo_.at.to_string() + "}";
      return lower_text(lo_) + ", " + upper_text(hi_);
    case Kind::negation:
      return "~" + wrap(children_[0], 3);
    case Kind::conjunction:
      return wrap(children_[0], 2) + " & " + wrap(children_[1], 3);
    case Kind::disjunction:
      return wrap(children_[0], 1) + " | " + wrap(children_[1], 2);
  }
  return "?";
}

bool membership(const CodedSet& s, const Germ& a) { return s.predicate().holds(a); }

CodedSet setops(const CodedSet& a, const CodedSet& b, SetOp op) {
  if (a.universe() != b.universe())
    throw UniverseMismatch("cannot combine sets over '" + a.universe() + "' and '" + b.universe() + "'");
  switch (op) {
    case SetOp::union_:
      return CodedSet(Predicate::disjunction(a.predicate(), b.predicate()), a.universe());
    case SetOp::intersection:
      return CodedSet(Predicate::conjunction(a.predicate(), b.predicate()), a.universe());
    case SetOp::difference:
      return CodedSet(Predicate::conjunction(a.predicate(), Predicate::negation(b.predicate())), a.universe());
  }
  throw InvalidArgument("unknown set operation");
}

CodedSet complement(const CodedSet& a) { return CodedSet(Predicate::negation(a.predicate()), a.universe()); }

std::vector<Germ> separating_catalog(const std::vector<const Predicate*>& preds) {
  std::vector<Germ> ends;
  for (const auto* p : preds) p->endpoints(ends);

  long scale = 2;
  for (const auto& e : ends) scale = std::max(scale, 2 + e.numerator().degree() + e.denominator().degree());

  std::vector<Germ> critical = {Germ(0)};
  for (const auto& e : ends) {
    critical.push_back(e);
    if (auto s = shadow(e); s.is_finite()) critical.push_back(Germ(s.value()));
  }
  const Germ w = Germ::omega();
  const Germ tiny = w.pow(-scale);
  const Germ huge = w.pow(scale);
  std::vector<Germ> pts;
  for (const auto& c : critical) {
    for (const Germ& d : {Germ(0), w.reciprocal(), tiny, Germ(1)}) {
      pts.push_back(c + d);
      pts.push_back(c - d);
    }
  }
  for (const Germ& u : {w, huge}) {
    pts.push_back(u);
    pts.push_back(-u);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Germ> out = pts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back((pts[i] + pts[i + 1]) / Germ(2));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool equivalent(const CodedSet& a, const CodedSet& b) {
  if (a.universe() != b.universe()) return false;
  for (const auto& g : separating_catalog({&a.predicate(), &b.predicate()}))
    if (a.predicate().holds(g) != b.predicate().holds(g)) return false;
  return true;
}

CodedSet IntervalFamily::at(long k) const {
  const Rational kk(k);
  Bound l = lo ? (lo_closed ? Bound::closed(Germ(lo->evaluate(kk))) : Bound::open(Germ(lo->evaluate(kk)))) : Bound::none();
  Bound h = hi ? (hi_closed ? Bound::closed(Germ(hi->evaluate(kk))) : Bound::open(Germ(hi->evaluate(kk)))) : Bound::none();
  return CodedSet(Predicate::interval(std::move(l), std::move(h)), universe);
}

namespace {

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw InvalidArgument("index bound out of range");
  return z.get_si();
}

// Every integer k >= first at which g (a germ in k) is undefined or has the
// wrong sign lies below the returned bound.
long sign_threshold(const Germ& g, long first) {
  long t = first;
  t = std::max(t, to_long(eventually_threshold(Germ(g.denominator(), Polynomial(1)))));
  if (!g.is_zero()) t = std::max(t, to_long(eventually_threshold(g)));
  return t;
}

// Exact check that e(k) - e(k+1) has sign `want` (>= 0 or <= 0) for all k >= first.
void check_monotone(const Germ& e, long first, int want, const char* side) {
  const Germ step = e - e.shifted(1);
  long limit = std::max(sign_threshold(e, first), sign_threshold(step, first));
  if (!step.is_zero() && sign(step) != want)
    throw NonMonotoneGenerator(std::string(side) + " endpoint " + e.to_string('k') + " is not monotone in the required direction");
  for (long k = first; k <= limit; ++k) {
    Rational a, b;
    try {
      a = e.evaluate(Rational(k));
      b = e.evaluate(Rational(k + 1));
    } catch (const DivisionByZero&) {
      throw NonMonotoneGenerator(std::string(side) + " endpoint is undefined at k = " + std::to_string(k));
    }
    if (sign(Rational(a - b)) * want < 0)
      throw NonMonotoneGenerator(std::string(side) + " endpoint " + e.to_string('k') +
                                 " breaks monotonicity at k = " + std::to_string(k));
  }
}

// Limit bound of a side already known to be monotone in the right direction.
Bound limit_bound(const Germ& e, bool closed, bool is_union) {
  if (e.is_constant()) return closed ? Bound::closed(e) : Bound::open(e);
  ExtendedShadow s = shadow(e);
  if (!s.is_finite()) return {is_union ? Bound::Kind::past_some : Bound::Kind::past_every, Germ()};
  return {is_union ? Bound::Kind::halo_open : Bound::Kind::halo_closed, Germ(s.value())};
}

// Some k >= first with e(k) strictly on the `dir` side of the target t.
long index_beyond(const Germ& e, const Rational& t, int dir, long first) {
  Germ g = dir > 0 ? e - Germ(t) : Germ(t) - e;
  return sign_threshold(g, first);
}

}  // namespace

CountableResult countable_ops(const IntervalFamily& family, CountableOp op) {
  const bool is_union = op == CountableOp::union_;
  // Union: lo non-increasing (step >= 0), hi non-decreasing. Intersection: reversed.
  if (family.lo) check_monotone(*family.lo, family.first_k, is_union ? 1 : -1, "lower");
  if (family.hi) check_monotone(*family.hi, family.first_k, is_union ? -1 : 1, "upper");
  Bound lo = family.lo ? limit_bound(*family.lo, family.lo_closed, is_union) : Bound::none();
  Bound hi = family.hi ? limit_bound(*family.hi, family.hi_closed, is_union) : Bound::none();
  return CountableResult{CodedSet(Predicate::interval(lo, hi), family.universe), op, family};
}

std::optional<long> CountableResult::witness(const Germ& a) const {
  const bool member = set.predicate().holds(a);
  const long first = family.first_k;
  const ExtendedShadow sa = shadow(a);

  if (op == CountableOp::union_) {
    if (!member) return std::nullopt;
    long k = first;
    // Lower endpoints fall toward their limit: find one below a.
    if (family.lo && !family.lo->is_constant()) {
      ExtendedShadow l = shadow(*family.lo);
      Rational t;
      if (sa.is_finite()) t = l.is_finite() ? Rational((l.value() + sa.value()) / 2) : Rational(sa.value() - 1);
      else t = l.is_finite() ? Rational(l.value() + 1) : Rational(0);
      k = std::max(k, index_beyond(*family.lo, t, -1, first));
    }
    if (family.hi && !family.hi->is_constant()) {
      ExtendedShadow h = shadow(*family.hi);
      Rational t;
      if (sa.is_finite()) t = h.is_finite() ? Rational((h.value() + sa.value()) / 2) : Rational(sa.value() + 1);
      else t = h.is_finite() ? Rational(h.value() - 1) : Rational(0);
      k = std::max(k, index_beyond(*family.hi, t, 1, first));
    }
    return k;
  }

  if (member) return std::nullopt;
  // Find the side that fails and an index where it already fails.
  if (family.lo && !satisfies_lower(set.predicate().lo(), a)) {
    if (family.lo->is_constant()) return first;
    ExtendedShadow l = shadow(*family.lo);
    Rational t;
    if (l.is_finite()) t = sa.is_finite() ? Rational((l.value() + sa.value()) / 2) : Rational(l.value() - 1);
    else t = sa.is_finite() ? Rational(sa.value() + 1) : Rational(0);
    return index_beyond(*family.lo, t, 1, first);
  }
  if (family.hi) {
    if (family.hi->is_constant()) return first;
    ExtendedShadow h = shadow(*family.hi);
    Rational t;
    if (h.is_finite()) t = sa.is_finite() ? Rational((h.value() + sa.value()) / 2) : Rational(h.value() + 1);
    else t = sa.is_finite() ? Rational(sa.value() - 1) : Rational(0);
    return index_beyond(*family.hi, t, -1, first);
  }
  return first;
}

}  // namespace nsfrag::coding
