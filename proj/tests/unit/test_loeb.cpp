#include "nsfrag/error.hpp"
#include "nsfrag/eval.hpp"
#include "nsfrag/loeb.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"

using namespace nsfrag;
using namespace nsfrag::loeb;
using oracle::Q;

namespace {

const Germ w = Germ::omega();
Germ g(const char* text) { return eval::parse_germ(text); }
InternalSet iset(const char* text) { return eval::internal_set_of(expr::parse(text, expr::Mode::set)); }

// Random finite union of rational intervals in [0, 1] with its length
// computed independently by sweeping the sorted endpoints.
struct RandomUnion {
  std::vector<Piece> pieces;
  Rational length;
};

RandomUnion random_union(oracle::Gen& gen, int max_pieces = 6) {
  RandomUnion r;
  int n = static_cast<int>(gen.integer(1, max_pieces));
  std::vector<std::pair<Q, Q>> spans;
  for (int i = 0; i < n; ++i) {
    Q a(gen.integer(0, 24), 24), b(gen.integer(0, 24), 24);
    a.canonicalize();
    b.canonicalize();
    if (a > b) std::swap(a, b);
    r.pieces.push_back({Germ(a), Germ(b), gen.coin(), gen.coin()});
    spans.emplace_back(a, b);
  }
  std::sort(spans.begin(), spans.end());
  Q total = 0, reach = 0;
  bool started = false;
  for (const auto& [a, b] : spans) {
    if (!started || a > reach) {
      total += b - a;
      reach = b;
      started = true;
    } else if (b > reach) {
      total += b - reach;
      reach = b;
    }
  }
  r.length = total;
  return r;
}

}  // namespace

TEST_CASE("time line must be unlimited") {
  CHECK_NOTHROW(TimeLine(g("w^2")));
  CHECK_THROWS_AS(TimeLine(Germ(10)), InvalidArgument);
  CHECK_THROWS_AS(TimeLine(-w), InvalidArgument);
}

TEST_CASE("normalization") {
  InternalSet s({Piece::closed(Rational(1, 2), 2), Piece::closed(-1, Rational(1, 4)), {Rational(1, 4), Rational(1, 2), false, false}});
  CHECK(s.pieces().size() == 1);
  CHECK(s == InternalSet::whole());
  InternalSet gap({{0, Rational(1, 2), true, false}, {Rational(1, 2), 1, false, true}});
  CHECK(gap.pieces().size() == 2);
  CHECK_FALSE(gap.contains(Germ(Rational(1, 2))));
  CHECK(InternalSet({{Rational(1, 2), Rational(1, 2), true, false}}).empty());
}

TEST_CASE("counting measure examples") {
  CountingBounds whole = counting_measure(InternalSet::whole());
  CHECK(shadow(whole.lower) == ExtendedShadow(Rational(1)));
  CHECK(shadow(whole.upper) == ExtendedShadow(Rational(1)));
  CountingBounds mid = counting_measure(InternalSet({Piece::closed(Rational(1, 4), Rational(3, 4))}));
  CHECK(shadow(mid.lower) == ExtendedShadow(Rational(1, 2)));
  CHECK(shadow(mid.upper) == ExtendedShadow(Rational(1, 2)));
  const long N = 10000;
  Q exact(oracle::grid_count(Q(1, 4), Q(3, 4), true, true, N), N + 1);
  exact.canonicalize();
  CHECK(mid.lower.evaluate(Q(N)) <= exact);
  CHECK(exact <= mid.upper.evaluate(Q(N)));
  CountingBounds tiny = counting_measure(InternalSet({Piece::closed(w.reciprocal(), Germ(2) / w)}));
  CHECK(shadow(tiny.lower) == ExtendedShadow(Rational(0)));
  CHECK(shadow(tiny.upper) == ExtendedShadow(Rational(0)));
}

TEST_CASE("counting bounds straddle the grid count") {
  oracle::Gen gen(51);
  const long N = 10000;
  for (int i = 0; i < 40; ++i) {
    RandomUnion u = random_union(gen, 3);
    InternalSet s(u.pieces);
    long count = 0;
    for (const auto& p : s.pieces())
      count += oracle::grid_count(p.lo.constant_value(), p.hi.constant_value(), p.lo_closed, p.hi_closed, N);
    Q exact(count, N + 1);
    exact.canonicalize();
    CountingBounds b = counting_measure(s);
    CHECK(b.lower.evaluate(Q(N)) <= exact);
    CHECK(exact <= b.upper.evaluate(Q(N)));
    CHECK(shadow(b.lower).value() == loeb_measure(s));
    CHECK(shadow(b.upper).value() == loeb_measure(s));
  }
}

TEST_CASE("loeb measure examples") {
  CHECK(loeb_measure(InternalSet({Piece::closed(w.reciprocal(), Rational(1, 2))})) == Rational(1, 2));
  CHECK(loeb_measure(InternalSet({Piece::closed(0, Rational(1, 3)), Piece::closed(Rational(2, 3), 1)})) ==
        Rational(2, 3));
  CHECK(loeb_measure(InternalSet({Piece::closed(g("1/2 - 1/w"), g("1/2 + 1/w"))})) == 0);
}

TEST_CASE("finite additivity") {
  AdditivityReport r = finite_additivity_check(InternalSet({Piece::closed(0, Rational(1, 4))}),
                                               InternalSet({{Rational(1, 4), Rational(1, 2), false, true}}));
  CHECK(r.first == Rational(1, 4));
  CHECK(r.second == Rational(1, 4));
  CHECK(r.together == Rational(1, 2));
  CHECK(r.holds());
  AdditivityReport s = finite_additivity_check(InternalSet({Piece::closed(0, w.reciprocal())}),
                                               InternalSet({Piece::closed(Rational(1, 3), Rational(2, 3))}));
  CHECK(s.together == Rational(1, 3));
  CHECK(s.holds());
  CHECK_THROWS_AS(finite_additivity_check(InternalSet({Piece::closed(0, Rational(1, 2))}),
                                          InternalSet({Piece::closed(Rational(1, 2), 1)})),
                  NotDisjoint);
  oracle::Gen gen(52);
  for (int i = 0; i < 10; ++i) {
    RandomUnion u = random_union(gen, 10);
    InternalSet a(u.pieces);
    InternalSet b = complement(a);
    CHECK(finite_additivity_check(a, b).holds());
  }
}

TEST_CASE("lebesgue examples") {
  CHECK(lebesgue(iset("(1/4, 3/4)")) == Rational(1, 2));
  CHECK(lebesgue(iset("{1/3}")) == 0);
  CHECK(lebesgue(iset("[0, 1/3] | (1/2, 1]")) == Rational(5, 6));
  CHECK_THROWS_AS(lebesgue(InternalSet({Piece::closed(0, w.reciprocal())})), OutOfAlgebra);
}

TEST_CASE("lebesgue equals the swept length") {
  oracle::Gen gen(53);
  for (int i = 0; i < 100; ++i) {
    RandomUnion u = random_union(gen);
    CHECK(lebesgue(InternalSet(u.pieces)) == u.length);
  }
}

TEST_CASE("measure laws") {
  oracle::Gen gen(54);
  for (int i = 0; i < 60; ++i) {
    InternalSet x(random_union(gen).pieces), y(random_union(gen).pieces);
    CHECK(loeb_measure(x) + loeb_measure(complement(x)) == 1);
    InternalSet both = intersect(x, y);
    CHECK(subset(both, x));
    CHECK(loeb_measure(both) <= loeb_measure(x));
    CHECK(loeb_measure(unite(x, y)) + loeb_measure(both) == loeb_measure(x) + loeb_measure(y));
    CHECK(complement(complement(x)) == x);
    CHECK(disjoint(x, complement(x)));
    CHECK(difference(x, y) == intersect(x, complement(y)));
    // membership of the set operations, pointwise on grid points
    for (int j = 0; j <= 24; ++j) {
      Germ p(Rational(j, 24));
      CHECK(unite(x, y).contains(p) == (x.contains(p) || y.contains(p)));
      CHECK(both.contains(p) == (x.contains(p) && y.contains(p)));
      CHECK(complement(x).contains(p) == !x.contains(p));
    }
  }
}

TEST_CASE("null sets") {
  oracle::Gen gen(55);
  for (int i = 0; i < 30; ++i) {
    std::vector<Piece> ps;
    for (int j = 0; j < 4; ++j) {
      Rational c(gen.integer(1, 9), 10);
      ps.push_back({Germ(c) - Germ(gen.integer(0, 3)) / w, Germ(c) + Germ(gen.integer(0, 3)) / w, gen.coin(), gen.coin()});
    }
    CHECK(loeb_measure(InternalSet(ps)) == 0);
  }
}

namespace {

eval::SigmaSpec load_sigma(const std::string& name) {
  std::ifstream in(std::string(NSFRAG_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  return eval::parse_sigma(in);
}

}  // namespace

TEST_CASE("sigma: increasing [1/k, 1]") {
  SigmaResult r = sigma_limit(load_sigma("increasing.sigma").family, 30);
  for (const auto& [k, v] : r.partial) CHECK(v == 1 - Rational(1, k));
  CHECK(r.limit == ExtendedShadow(Rational(1)));
}

TEST_CASE("sigma: dyadic disjoint family") {
  SigmaResult r = sigma_limit(load_sigma("dyadic.sigma").family, 30);
  REQUIRE(r.partial.size() == 31);
  for (const auto& [k, v] : r.partial) CHECK(v == 1 - pow(Rational(1, 2), k + 1));
  CHECK(r.limit == ExtendedShadow(Rational(1)));

  std::istringstream text("mode: disjoint\npiece: ((1/2)^(k+1), (1/2)^k]\n");
  SigmaResult s = sigma_limit(eval::parse_sigma(text).family, 30);
  CHECK(s.partial == r.partial);
}

TEST_CASE("sigma: Cantor family") {
  SigmaResult r = sigma_limit(load_sigma("cantor.sigma").family, 40);
  REQUIRE(r.partial.size() == 41);
  for (const auto& [k, v] : r.partial) CHECK(v == pow(Rational(2, 3), k));
  CHECK(r.limit == ExtendedShadow(Rational(0)));
  SigmaFamily f = load_sigma("cantor.sigma").family;
  CHECK(f.at(2).pieces().size() == 4);
  CHECK(lebesgue(f.at(5)) == pow(Rational(2, 3), 5));
}

TEST_CASE("sigma: mode violations") {
  std::istringstream wrong("mode: decreasing\nstart: 1\npiece: [1/k, 1]\n");
  CHECK_THROWS_AS(sigma_limit(eval::parse_sigma(wrong).family, 10), ModeViolation);
  std::istringstream overlap("mode: disjoint\npiece: [0, 1/2]\n");
  CHECK_THROWS_AS(sigma_limit(eval::parse_sigma(overlap).family, 10), ModeViolation);
  std::istringstream nomode("piece: [0, 1]\n");
  CHECK_THROWS_AS(eval::parse_sigma(nomode), InvalidArgument);
}
