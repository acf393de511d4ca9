#include "nsfrag/hull.hpp"

#include "nsfrag/error.hpp"

#include <algorithm>

namespace nsfrag::hull {

Structure Structure::vectors(int d) {
  if (d < 1) throw InvalidArgument("vector dimension must be positive");
  return Structure(Tag::rationals_vector, d);
}

std::string Structure::name() const {
  switch (tag_) {
    case Tag::rationals_abs:
      return "rationals-abs";
    case Tag::naturals_discrete:
      return "naturals-discrete";
    case Tag::rationals_vector:
      return "rationals-vector(" + std::to_string(dim_) + ")";
  }
  return "?";
}

namespace {

void check_dimension(const Structure& s, const Point& p) {
  if (static_cast<int>(p.size()) != s.dimension())
    throw InvalidArgument("point has " + std::to_string(p.size()) + " components, " + s.name() + " needs " +
                          std::to_string(s.dimension()));
}

}  // namespace

Germ Structure::distance(const Point& a, const Point& b) const {
  check_dimension(*this, a);
  check_dimension(*this, b);
  if (tag_ == Tag::naturals_discrete) return a[0] == b[0] ? Germ(0) : Germ(1);
  Germ d(0);
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, abs(a[i] - b[i]));
  return d;
}

void Structure::check_carrier(const Point& p) const {
  check_dimension(*this, p);
  if (tag_ != Tag::naturals_discrete) return;
  const Germ& g = p[0];
  if (!g.denominator().is_constant())
    throw NotInCarrier(g.to_string() + " is not an integer-valued polynomial of w");
  // A polynomial of degree d taking integer values at d+1 consecutive
  // integers takes integer values at every integer.
  for (long n = 0; n <= g.numerator().degree(); ++n)
    if (g.evaluate(Rational(n)).get_den() != 1)
      throw NotInCarrier(g.to_string() + " is not an integer-valued polynomial of w");
  if (sign(g) < 0) throw NotInCarrier(g.to_string() + " is eventually negative");
}

HullPoint hull_point(const Structure& s, const Point& g) {
  s.check_carrier(g);
  if (s.tag() == Structure::Tag::naturals_discrete) return HullPoint(s, g, g);
  Point canon;
  canon.reserve(g.size());
  for (const auto& c : g) {
    ExtendedShadow sh = shadow(c);
    if (!sh.is_finite()) throw NotFinite(c.to_string() + " is not a finite point of " + s.name());
    canon.emplace_back(sh.value());
  }
  return HullPoint(s, g, std::move(canon));
}

std::string HullPoint::to_string() const {
  if (canonical_.size() == 1) return canonical_[0].to_string();
  std::string out = "(";
  for (std::size_t i = 0; i < canonical_.size(); ++i) out += (i ? ", " : "") + canonical_[i].to_string();
  return out + ")";
}

Rational hull_dist(const HullPoint& p, const HullPoint& q) {
  if (!(p.structure() == q.structure()))
    throw StructureMismatch("points of " + p.structure().name() + " and " + q.structure().name());
  ExtendedShadow s = shadow(p.structure().distance(p.representative(), q.representative()));
  return s.value();  // finite: both points are finite
}

bool approachable(const Structure& s, const Point& g) {
  s.check_carrier(g);
  if (s.tag() == Structure::Tag::naturals_discrete) return g[0].is_constant();
  return std::all_of(g.begin(), g.end(), [](const Germ& c) { return is_limited(c); });
}

HullLimit hull_limit(const HullSequence& seq) {
  if (seq.structure.dimension() != 1) throw InvalidArgument("hull limits take scalar families");
  if (seq.check_bound < 0) throw InvalidArgument("check bound must be nonnegative");
  auto member = [&](long k) {
    try {
      return hull_point(seq.structure, seq.family.at(Rational(k)));
    } catch (const DegenerateDiagonal&) {
      throw ModulusViolation("family is undefined at k = " + std::to_string(k));
    }
  };

  for (long j = 0; j <= seq.check_bound; ++j) {
    const long m = seq.modulus(j);
    if (m < seq.first_k) throw ModulusViolation("modulus(" + std::to_string(j) + ") precedes the first index");
    const Rational tol = Rational(1, j + 1);
    const std::vector<long> ks = {m, m + 1, m + 2, 2 * m + 1, 10 * m + 7};
    std::vector<HullPoint> pts;
    for (long k : ks) pts.push_back(member(k));
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b)
        if (hull_dist(pts[a], pts[b]) >= tol)
          throw ModulusViolation("members " + std::to_string(ks[a]) + " and " + std::to_string(ks[b]) +
                                 " are not within 1/" + std::to_string(j + 1));
  }

  HullPoint limit = hull_point(seq.structure, diagonal(seq.family));
  std::vector<LimitCertificate> cert;
  for (long j = 0; j <= seq.check_bound; ++j) {
    const long k = seq.modulus(j);
    Rational d = hull_dist(limit, member(k));
    if (d > Rational(1, j + 1))
      throw ModulusViolation("limit is not within 1/" + std::to_string(j + 1) + " of member " + std::to_string(k));
    cert.push_back({j, k, d});
  }
  return {limit, std::move(cert)};
}

HullPoint normed_hull(int d, const Point& v) { return hull_point(Structure::vectors(d), v); }

HullPoint operator+(const HullPoint& a, const HullPoint& b) {
  if (!(a.structure() == b.structure()) || a.structure().tag() == Structure::Tag::naturals_discrete)
    throw StructureMismatch("addition needs two points of the same vector structure");
  Point sum;
  for (std::size_t i = 0; i < a.representative().size(); ++i) sum.push_back(a.representative()[i] + b.representative()[i]);
  return hull_point(a.structure(), sum);
}

HullPoint scale(const Rational& q, const HullPoint& a) {
  if (a.structure().tag() == Structure::Tag::naturals_discrete)
    throw StructureMismatch("scaling needs a vector structure");
  Point out;
  for (const auto& c : a.representative()) out.push_back(Germ(q) * c);
  return hull_point(a.structure(), out);
}

}  // namespace nsfrag::hull
