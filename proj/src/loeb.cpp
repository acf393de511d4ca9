#include "nsfrag/loeb.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace nsfrag::loeb {

TimeLine::TimeLine(Germ n) : n_(std::move(n)) {
  if (classify(n_) != GermClass::unlimited_positive)
    throw InvalidArgument("time line size " + n_.to_string() + " is not unlimited positive");
}

bool Piece::empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }

bool Piece::contains(const Germ& x) const {
  bool above = lo_closed ? x >= lo : x > lo;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

namespace {

std::vector<Piece> normalize(std::vector<Piece> in) {
  std::vector<Piece> ps;
  for (auto& p : in) {
    if (p.lo < Germ(0)) {
      p.lo = 0;
      p.lo_closed = true;
    }
    if (p.hi > Germ(1)) {
      p.hi = 1;
      p.hi_closed = true;
    }
    if (!p.empty()) ps.push_back(std::move(p));
  }
  std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Piece> out;
  for (auto& p : ps) {
    if (!out.empty()) {
      Piece& c = out.back();
      if (p.lo < c.hi || (p.lo == c.hi && (c.hi_closed || p.lo_closed))) {
        if (p.hi > c.hi) {
          c.hi = p.hi;
          c.hi_closed = p.hi_closed;
        } else if (p.hi == c.hi) {
          c.hi_closed = c.hi_closed || p.hi_closed;
        }
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

InternalSet::InternalSet(std::vector<Piece> pieces, TimeLine line)
    : line_(std::move(line)), pieces_(normalize(std::move(pieces))) {}

bool InternalSet::contains(const Germ& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const Piece& p) { return p.contains(x); });
}

bool InternalSet::is_standard() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const Piece& p) { return p.lo.is_constant() && p.hi.is_constant(); });
}

std::string InternalSet::to_string() const {
  if (pieces_.empty()) return "empty";
  std::string out;
  for (const auto& p : pieces_) {
    if (!out.empty()) out += " | ";
    if (p.lo == p.hi) out += "{" + p.lo.to_string() + "}";
    else
      out += (p.lo_closed ? "[" : "(") + p.lo.to_string() + ", " + p.hi.to_string() + (p.hi_closed ? "]" : ")");
  }
  return out;
}

namespace {

void same_line(const InternalSet& a, const InternalSet& b) {
  if (!(a.line() == b.line())) throw InvalidArgument("internal sets live on different time lines");
}

}  // namespace

InternalSet unite(const InternalSet& a, const InternalSet& b) {
  same_line(a, b);
  std::vector<Piece> ps = a.pieces();
  ps.insert(ps.end(), b.pieces().begin(), b.pieces().end());
  return InternalSet(std::move(ps), a.line());
}

InternalSet intersect(const InternalSet& a, const InternalSet& b) {
  same_line(a, b);
  // Both piece lists are sorted and disjoint: two-pointer merge.
  std::vector<Piece> ps;
  const auto& pa = a.pieces();
  const auto& pb = b.pieces();
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    const Piece& p = pa[i];
    const Piece& q = pb[j];
    Piece r;
    if (p.lo == q.lo) {
      r.lo = p.lo;
      r.lo_closed = p.lo_closed && q.lo_closed;
    } else {
      const Piece& m = p.lo > q.lo ? p : q;
      r.lo = m.lo;
      r.lo_closed = m.lo_closed;
    }
    bool advance_p;
    if (p.hi == q.hi) {
      r.hi = p.hi;
      r.hi_closed = p.hi_closed && q.hi_closed;
      advance_p = !p.hi_closed || q.hi_closed;
    } else {
      advance_p = p.hi < q.hi;
      const Piece& m = advance_p ? p : q;
      r.hi = m.hi;
      r.hi_closed = m.hi_closed;
    }
    if (!r.empty()) ps.push_back(std::move(r));
    if (advance_p) ++i;
    else ++j;
  }
  return InternalSet(std::move(ps), a.line());
}

InternalSet complement(const InternalSet& a) {
  std::vector<Piece> gaps;
  Germ cur = 0;
  bool cur_closed = true;
  for (const auto& p : a.pieces()) {
    gaps.push_back({cur, p.lo, cur_closed, !p.lo_closed});
    cur = p.hi;
    cur_closed = !p.hi_closed;
  }
  gaps.push_back({cur, 1, cur_closed, true});
  return InternalSet(std::move(gaps), a.line());
}

InternalSet difference(const InternalSet& a, const InternalSet& b) { return intersect(a, complement(b)); }

bool subset(const InternalSet& a, const InternalSet& b) { return intersect(a, b) == a; }

bool disjoint(const InternalSet& a, const InternalSet& b) { return intersect(a, b).empty(); }

CountingBounds counting_measure(const InternalSet& x) {
  Germ width = 0;
  for (const auto& p : x.pieces()) width += p.hi - p.lo;
  const Germ& n = x.line().size();
  const Germ count(static_cast<long>(x.pieces().size()));
  return {(width * n - count) / (n + Germ(1)), (width * n + count) / (n + Germ(1))};
}

Rational loeb_measure(const InternalSet& x) {
  Rational total = 0;
  for (const auto& p : x.pieces()) total += shadow(p.hi).value() - shadow(p.lo).value();
  return total;
}

AdditivityReport finite_additivity_check(const InternalSet& a, const InternalSet& b) {
  InternalSet both = intersect(a, b);
  if (!both.empty()) throw NotDisjoint("sets share " + both.to_string());
  return {loeb_measure(a), loeb_measure(b), loeb_measure(unite(a, b))};
}

Rational lebesgue(const InternalSet& a) {
  if (!a.is_standard()) throw OutOfAlgebra("set " + a.to_string() + " has non-standard endpoints");
  return loeb_measure(a);
}

// ---- sigma families -------------------------------------------------------

std::string to_string(SigmaMode m) {
  switch (m) {
    case SigmaMode::increasing:
      return "increasing";
    case SigmaMode::decreasing:
      return "decreasing";
    case SigmaMode::disjoint:
      return "disjoint";
  }
  return "?";
}

InternalSet SigmaFamily::at(long k) const {
  if (k < first_k) throw InvalidArgument("index precedes the first member");
  if (self_similar()) {
    if (k > explicit_limit) throw InvalidArgument("self-similar members are enumerated only up to k = 12");
    std::vector<Piece> cur = {Piece::closed(0, 1)};
    for (long i = 0; i < k; ++i) {
      std::vector<Piece> next;
      for (const auto& m : maps) {
        for (const auto& p : cur) {
          Germ a = Germ(m.ratio) * p.lo + Germ(m.shift);
          Germ b = Germ(m.ratio) * p.hi + Germ(m.shift);
          if (m.ratio > 0) next.push_back({a, b, p.lo_closed, p.hi_closed});
          else next.push_back({b, a, p.hi_closed, p.lo_closed});
        }
      }
      cur = std::move(next);
    }
    return InternalSet(std::move(cur));
  }
  std::vector<Piece> ps;
  for (const auto& p : pieces)
    ps.push_back({Germ(p.lo.evaluate(Integer(k))), Germ(p.hi.evaluate(Integer(k))), p.lo_closed, p.hi_closed});
  return InternalSet(std::move(ps));
}

namespace {

void check_mode(const SigmaFamily& f, const std::vector<InternalSet>& members) {
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    const long k = f.first_k + static_cast<long>(i);
    if (f.mode == SigmaMode::increasing && !subset(members[i], members[i + 1]))
      throw ModeViolation("member " + std::to_string(k) + " is not contained in member " + std::to_string(k + 1));
    if (f.mode == SigmaMode::decreasing && !subset(members[i + 1], members[i]))
      throw ModeViolation("member " + std::to_string(k + 1) + " is not contained in member " + std::to_string(k));
  }
  if (f.mode == SigmaMode::disjoint) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (!disjoint(members[i], members[j]))
          throw ModeViolation("members " + std::to_string(f.first_k + static_cast<long>(i)) + " and " +
                              std::to_string(f.first_k + static_cast<long>(j)) + " overlap");
  }
}

SigmaResult self_similar_limit(const SigmaFamily& f, long depth) {
  if (f.mode != SigmaMode::decreasing) throw ModeViolation("self-similar schemas generate decreasing families");
  if (f.first_k != 0) throw InvalidArgument("self-similar schemas start at k = 0");
  // Images of [0, 1] must lie in [0, 1] and be pairwise disjoint; then every
  // member is contained in the previous one and has measure rho^k.
  std::vector<Piece> images;
  Rational rho = 0;
  for (const auto& m : f.maps) {
    if (m.ratio == 0) throw InvalidArgument("contraction ratio must be nonzero");
    Rational a = m.shift, b = m.ratio + m.shift;
    if (a > b) std::swap(a, b);
    if (a < 0 || b > 1) throw ModeViolation("map image leaves [0, 1]");
    images.push_back(Piece::closed(a, b));
    rho += abs(m.ratio);
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (!disjoint(InternalSet({images[i]}), InternalSet({images[j]})))
        throw NoClosedForm("map images overlap, so member measures are not geometric");

  SigmaResult r;
  r.closed_form = KSequence::geometric(1, rho);
  const long explicit_depth = std::min(depth, SigmaFamily::explicit_limit);
  std::vector<InternalSet> members;
  for (long k = 0; k <= explicit_depth; ++k) members.push_back(f.at(k));
  check_mode(f, members);
  for (long k = 0; k <= depth; ++k) {
    Rational m = pow(rho, k);
    if (k <= explicit_depth && lebesgue(members[static_cast<std::size_t>(k)]) != m)
      throw std::logic_error("explicit member measure disagrees with the recursion");
    r.partial.emplace_back(k, m);
  }
  r.limit = r.closed_form.limit();
  return r;
}

}  // namespace

SigmaResult sigma_limit(const SigmaFamily& f, long depth) {
  if (depth < f.first_k) throw InvalidArgument("depth precedes the first member");
  if (f.self_similar()) return self_similar_limit(f, depth);
  if (f.pieces.empty()) throw InvalidArgument("family has no pieces");

  std::vector<InternalSet> members;
  for (long k = f.first_k; k <= depth; ++k) members.push_back(f.at(k));
  check_mode(f, members);

  KSequence width;
  for (const auto& p : f.pieces) width = width + (p.hi - p.lo);

  SigmaResult r;
  Rational running = 0;
  for (long k = f.first_k; k <= depth; ++k) {
    Rational m = lebesgue(members[static_cast<std::size_t>(k - f.first_k)]);
    if (width.evaluate(Integer(k)) != m)
      throw NoClosedForm("member " + std::to_string(k) + " is clipped or self-overlapping; widths do not give its measure");
    running += m;
    r.partial.emplace_back(k, f.mode == SigmaMode::disjoint ? running : m);
  }
  r.closed_form = f.mode == SigmaMode::disjoint ? width.partial_sums(Integer(f.first_k)) : width;
  for (const auto& [k, v] : r.partial)
    if (r.closed_form.evaluate(Integer(k)) != v) throw std::logic_error("closed form disagrees with partial values");
  r.limit = r.closed_form.limit();
  return r;
}

}  // namespace nsfrag::loeb
