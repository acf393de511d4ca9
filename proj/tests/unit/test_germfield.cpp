#include "nsfrag/bivariate.hpp"
#include "nsfrag/error.hpp"
#include "nsfrag/eval.hpp"
#include "nsfrag/germ.hpp"
#include "nsfrag/ksequence.hpp"

#include <doctest.h>

#include "oracle.hpp"

using namespace nsfrag;
using oracle::Q;

namespace {

Germ g(const char* text) { return eval::parse_germ(text); }
const Germ w = Germ::omega();

}  // namespace

TEST_CASE("arith examples") {
  CHECK(arith(w, w.reciprocal(), GermOp::mul) == Germ(1));
  CHECK(arith(w + Germ(1), w, GermOp::sub) == Germ(1));
  CHECK(arith(g("(w^2-1)/(w+1)"), Germ(1), GermOp::add) == w);
  CHECK_THROWS_AS(arith(w, Germ(0), GermOp::div), DivisionByZero);
}

TEST_CASE("reduced expansion agrees with pointwise evaluation") {
  // (w^2-1)/(w+1) + 1 evaluated by hand at five integers equals n.
  Germ r = g("(w^2-1)/(w+1)") + Germ(1);
  for (long n : {2, 3, 5, 8, 13}) CHECK(r.evaluate(Q(n)) == Q(n));
}

TEST_CASE("canonical form") {
  Germ a = g("(2*w+2)/(4*w+4)");
  CHECK(a == Germ(Rational(1, 2)));
  Germ b = g("1/(-2*w)");
  CHECK(b.denominator().leading() == 1);
  CHECK(b == -(w * Germ(2)).reciprocal());
  CHECK(g("(2*w^2+3)/(w^2-w)").to_string() == "(2*w^2 + 3)/(w^2 - w)");
  CHECK(g("w+1").to_string() == "w + 1");
  CHECK(g("-w/3").to_string() == "-1/3*w");
}

TEST_CASE("compare examples") {
  CHECK(compare(w, Germ(1000000)) == std::strong_ordering::greater);
  CHECK(compare(w.reciprocal(), Germ(0)) == std::strong_ordering::greater);
  Germ a = g("(2*w+3)/(w+1)");
  CHECK(compare(a, Germ(2)) == std::strong_ordering::greater);
  for (long n : {10, 100, 1000}) CHECK(a.evaluate(Q(n)) > 2);
}

TEST_CASE("valuation examples and bottom") {
  CHECK(valuation(w) == Valuation(1));
  CHECK(valuation(g("3 + 1/w")) == Valuation(0));
  CHECK(valuation(g("(w+2)/(w^3-w)")) == Valuation(-2));
  CHECK(valuation(Germ(0)).is_bottom());
  CHECK(valuation(Germ(0)) < Valuation(-1000));
  CHECK((valuation(Germ(0)) + Valuation(3)).is_bottom());
}

TEST_CASE("shadow examples") {
  CHECK(shadow(w.reciprocal()) == ExtendedShadow(Rational(0)));
  CHECK(shadow(w) == ExtendedShadow::plus_infinity());
  CHECK(shadow(-w) == ExtendedShadow::minus_infinity());
  Germ a = g("(2*w^2+3)/(w^2-w)");
  CHECK(shadow(a) == ExtendedShadow(Rational(2)));
  // numeric convergence at 10^3 and 10^6
  CHECK(abs(Rational(a.evaluate(Q(1000)) - 2)) < Rational(1, 100));
  CHECK(abs(Rational(a.evaluate(Q(1000000)) - 2)) < Rational(1, 100000));
}

TEST_CASE("classify examples") {
  CHECK(classify(Germ(Rational(7, 3))) == GermClass::standard_nonzero);
  CHECK(classify(w.pow(-2)) == GermClass::infinitesimal_nonzero);
  CHECK(classify(g("2 + 5/w")) == GermClass::appreciable_nonstandard);
  CHECK(classify(Germ(0)) == GermClass::zero);
  CHECK(classify(w) == GermClass::unlimited_positive);
  CHECK(classify(-w) == GermClass::unlimited_negative);
  CHECK(to_string(GermClass::appreciable_nonstandard) == "appreciable-nonstandard");
}

TEST_CASE("eventually_threshold examples") {
  Integer t1 = eventually_threshold(g("w - 5"));
  CHECK(t1 >= 6);
  Integer t2 = eventually_threshold(g("(w-100)*(w-2)"));
  CHECK(t2 >= 101);
  for (long n = t2.get_si(); n < t2.get_si() + 300; ++n) CHECK(g("(w-100)*(w-2)").evaluate(Q(n)) > 0);
  CHECK(eventually_threshold(w.reciprocal()) >= 1);
  CHECK_THROWS_AS(eventually_threshold(Germ(0)), ZeroGermError);
}

TEST_CASE("diagonal examples") {
  BivariateGerm k = BivariateGerm::k(), W = BivariateGerm::w();
  CHECK(diagonal(k / (k + BivariateGerm(Rational(1)))) == g("w/(w+1)"));
  Germ d = diagonal(k / (k + BivariateGerm(Rational(1))) + BivariateGerm(Rational(1)) / W);
  CHECK(d == g("w/(w+1) + 1/w"));
  CHECK(shadow(d) == ExtendedShadow(Rational(1)));
  CHECK(diagonal(BivariateGerm(Rational(1)) / (k * W)) == w.pow(-2));
  CHECK_THROWS_AS(diagonal(BivariateGerm(Rational(1)) / (k - W)), DegenerateDiagonal);
}

TEST_CASE("bivariate families at fixed k") {
  BivariateGerm f = eval::parse_family("1/((k-3)*w)");
  CHECK_THROWS_AS(f.at(3), DegenerateDiagonal);
  CHECK(f.at(5) == (Germ(2) * w).reciprocal());
  auto bad = f.undefined_indices(0);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == 3);
  CHECK(eval::parse_family("k^2 + 1").as_k_germ() == g("w^2 + 1"));
}

TEST_CASE("field axioms on random germs") {
  oracle::Gen gen(11);
  for (int i = 0; i < 150; ++i) {
    Germ a = gen.germ(), b = gen.germ(), c = gen.germ();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Germ(0));
    CHECK(a * a.reciprocal() == Germ(1));
  }
}

TEST_CASE("arithmetic agrees with raw evaluation") {
  oracle::Gen gen(12);
  for (int i = 0; i < 100; ++i) {
    oracle::Raw ra = gen.raw(), rb = gen.raw();
    Germ a = ra.germ(), b = rb.germ();
    Germ s = a + b, p = a * b, q = a / b;
    for (long n = 50; n < 56; ++n) {
      Q x(n);
      if (!ra.defined_at(x) || !rb.defined_at(x) || rb.at(x) == 0) continue;
      CHECK(oracle::value_at(s, x) == ra.at(x) + rb.at(x));
      CHECK(oracle::value_at(p, x) == ra.at(x) * rb.at(x));
      CHECK(oracle::value_at(q, x) == ra.at(x) / rb.at(x));
    }
  }
}

TEST_CASE("order properties") {
  oracle::Gen gen(13);
  for (int i = 0; i < 150; ++i) {
    Germ a = gen.germ(), b = gen.germ(), c = gen.germ();
    CHECK(((a < b) + (a == b) + (a > b)) == 1);
    if (a < b && b < c) CHECK(a < c);
    if (a < b && c > Germ(0)) CHECK(a * c < b * c);
    if (a < b) CHECK(a + c < b + c);
    CHECK(sign(a - b) == oracle::eventual_sign(a - b));
  }
}

TEST_CASE("compare agrees with sampling beyond the threshold") {
  oracle::Gen gen(14);
  for (int i = 0; i < 100; ++i) {
    Germ a = gen.germ(), b = gen.germ();
    Germ d = a - b;
    if (d.is_zero()) continue;
    long t = eventually_threshold(d).get_si();
    int want = compare(a, b) < 0 ? -1 : 1;
    for (long n = t; n < t + 40; ++n) CHECK(oracle::qsign(oracle::value_at(d, Q(n))) == want);
    CHECK(oracle::qsign(oracle::value_at(d, Q(t + 123457))) == want);
  }
}

TEST_CASE("shadow is a ring homomorphism on limited germs") {
  oracle::Gen gen(15);
  for (int i = 0; i < 150; ++i) {
    Germ a = gen.limited_germ(), b = gen.limited_germ();
    CHECK(shadow(a + b).value() == shadow(a).value() + shadow(b).value());
    CHECK(shadow(a * b).value() == shadow(a).value() * shadow(b).value());
    if (!a.is_zero() && shadow(a).value() == 0) CHECK(classify(a) == GermClass::infinitesimal_nonzero);
  }
}

TEST_CASE("valuation laws") {
  oracle::Gen gen(16);
  for (int i = 0; i < 150; ++i) {
    Germ a = gen.germ(), b = gen.germ();
    CHECK(valuation(a * b) == valuation(a) + valuation(b));
    CHECK(valuation(a + b) <= std::max(valuation(a), valuation(b)));
    GermClass c = classify(a);
    CHECK((c == GermClass::infinitesimal_nonzero || c == GermClass::zero) == is_infinitesimal(a));
    CHECK(is_limited(a) == (valuation(a) <= Valuation(0)));
  }
}

TEST_CASE("threshold soundness on random germs") {
  oracle::Gen gen(17);
  for (int i = 0; i < 100; ++i) {
    Germ a = gen.germ(3);
    long t = eventually_threshold(a).get_si();
    int s = sign(a);
    for (long n = t; n < t + 50; ++n) {
      REQUIRE(oracle::horner(std::vector<Q>(a.denominator().coeffs().begin(), a.denominator().coeffs().end()), Q(n)) != 0);
      CHECK(oracle::qsign(oracle::value_at(a, Q(n))) == s);
    }
  }
}

TEST_CASE("germ pow and shift") {
  CHECK(w.pow(3) == w * w * w);
  CHECK(w.pow(-1) == w.reciprocal());
  CHECK(w.shifted(2) == w + Germ(2));
  CHECK_THROWS_AS(Germ(0).reciprocal(), DivisionByZero);
}

TEST_CASE("k-sequences") {
  KSequence two_pow = KSequence::geometric(1, Rational(1, 2));
  CHECK(two_pow.evaluate(3) == Rational(1, 8));
  CHECK(two_pow.limit() == ExtendedShadow(Rational(0)));
  KSequence s = two_pow.partial_sums(0);
  for (long k = 0; k < 10; ++k) CHECK(s.evaluate(k) == 2 - pow(Rational(1, 2), k));
  CHECK(s.limit() == ExtendedShadow(Rational(2)));
  CHECK(KSequence::geometric(1, 2).limit() == ExtendedShadow::plus_infinity());
  CHECK_THROWS_AS(KSequence::geometric(1, -1).limit(), NoClosedForm);
  CHECK_THROWS_AS(KSequence::k().partial_sums(0), NoClosedForm);
  KSequence r = KSequence(Germ(1)) - two_pow;
  CHECK(r.to_string() == "1 - (1/2)^k");
}
