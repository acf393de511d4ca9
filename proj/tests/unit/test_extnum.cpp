#include "nsfrag/error.hpp"
#include "nsfrag/eval.hpp"
#include "nsfrag/extnum.hpp"

#include <doctest.h>

#include "oracle.hpp"

using namespace nsfrag;
using namespace nsfrag::ext;

namespace {

const Germ w = Germ::omega();
Germ g(const char* text) { return eval::parse_germ(text); }

Neutrix random_neutrix(oracle::Gen& gen) {
  long pick = gen.integer(0, 9);
  if (pick == 0) return Neutrix::zero();
  if (pick == 1) return Neutrix::all();
  return Neutrix::graded(gen.integer(-3, 2));
}

ExternalNumber random_ext(oracle::Gen& gen) { return ExternalNumber(gen.germ(), random_neutrix(gen)); }

// A germ of valuation at most k (or any germ / zero for the other kinds).
Germ sample_in(oracle::Gen& gen, const Neutrix& n) {
  switch (n.kind()) {
    case Neutrix::Kind::zero:
      return Germ(0);
    case Neutrix::Kind::all:
      return gen.germ();
    case Neutrix::Kind::graded:
      break;
  }
  if (gen.integer(0, 5) == 0) return Germ(0);
  return gen.limited_germ() * w.pow(n.grade());
}

Germ sample_in(oracle::Gen& gen, const ExternalNumber& x) { return x.center() + sample_in(gen, x.neutrix()); }

long oracle_valuation(const Germ& a) { return a.numerator().degree() - a.denominator().degree(); }

}  // namespace

TEST_CASE("neutrix arithmetic examples") {
  CHECK(neutrix_ops(Neutrix::monad(), Neutrix::monad(), NeutrixOp::add) == Neutrix::monad());
  CHECK(scale(w, Neutrix::monad()) == Neutrix::galaxy());
  CHECK(neutrix_ops(Neutrix::monad(), Neutrix::galaxy(), NeutrixOp::mul) == Neutrix::monad());
  CHECK(neutrix_ops(Neutrix::zero(), Neutrix::graded(3), NeutrixOp::add) == Neutrix::graded(3));
  CHECK(neutrix_ops(Neutrix::all(), Neutrix::graded(3), NeutrixOp::add) == Neutrix::all());
  CHECK(scale(Germ(0), Neutrix::all()) == Neutrix::zero());
  CHECK(Neutrix::monad().to_string() == "M0");
  CHECK(Neutrix::galaxy().to_string() == "G0");
  CHECK(Neutrix::graded(-2).to_string() == "N(-2)");

  // scale(w, M0): every sampled w*eps is limited, and 1/2 = w * (1/(2w)) is realized
  oracle::Gen gen(61);
  for (int i = 0; i < 20; ++i) {
    Germ eps = sample_in(gen, Neutrix::monad());
    CHECK(is_limited(w * eps));
  }
  CHECK(Neutrix::monad().contains((Germ(2) * w).reciprocal()));
  CHECK(scale(w, Neutrix::monad()).contains(Germ(Rational(1, 2))));
}

TEST_CASE("neutrix membership matches valuation") {
  oracle::Gen gen(62);
  for (int i = 0; i < 200; ++i) {
    Germ a = gen.germ(3);
    long k = gen.integer(-3, 3);
    CHECK(Neutrix::graded(k).contains(a) == (oracle_valuation(a) <= k));
    CHECK(Neutrix::monad().contains(a) == is_infinitesimal(a));
    CHECK(Neutrix::galaxy().contains(a) == is_limited(a));
  }
  CHECK(Neutrix::zero().contains(Germ(0)));
  CHECK_FALSE(Neutrix::zero().contains(w.pow(-5)));
}

TEST_CASE("graded neutrices are closed") {
  oracle::Gen gen(63);
  for (int i = 0; i < 200; ++i) {
    Neutrix n = Neutrix::graded(gen.integer(-3, 2));
    Germ a = sample_in(gen, n), b = sample_in(gen, n);
    CHECK(n.contains(a + b));
    CHECK(n.contains(-a));
    CHECK(n.contains(a * gen.limited_germ()));
  }
}

TEST_CASE("external number examples") {
  ExternalNumber three(3, Neutrix::monad()), four(4, Neutrix::monad());
  CHECK(extnum_add(three, four) == ExternalNumber(7, Neutrix::monad()));
  ExternalNumber fuzzy(g("3 + 1/w"), Neutrix::monad());
  CHECK(fuzzy == three);
  CHECK(fuzzy.to_string() == "3 + M0");
  CHECK(extnum_add(fuzzy, ExternalNumber(0, Neutrix::monad())) == three);
  CHECK(extnum_add(ExternalNumber(w, Neutrix::galaxy()), ExternalNumber(-w, Neutrix::monad())) ==
        ExternalNumber(0, Neutrix::galaxy()));
  CHECK(extnum_add(ExternalNumber(w, Neutrix::galaxy()), ExternalNumber(-w, Neutrix::monad())).to_string() ==
        "0 + G0");
  CHECK(extnum_mul(three, ExternalNumber(2, Neutrix::monad())) == ExternalNumber(6, Neutrix::monad()));
  CHECK(extnum_mul(ExternalNumber(0, Neutrix::monad()), ExternalNumber(0, Neutrix::monad())) ==
        ExternalNumber(0, Neutrix::graded(-2)));
  CHECK(ExternalNumber(g("w^2 + 3*w + 5 + 7/w"), Neutrix::galaxy()).center() == g("w^2 + 3*w"));
  CHECK(ExternalNumber(g("w + 1"), Neutrix::all()).center() == Germ(0));
  CHECK(ExternalNumber(g("2/3 + 1/w")).to_string() == "(2/3*w + 1)/w");
}

TEST_CASE("external number order examples") {
  ExternalNumber three(3, Neutrix::monad()), four(4, Neutrix::monad());
  CHECK(extnum_order(three, four) == ExtOrder::less);
  CHECK(extnum_order(four, three) == ExtOrder::greater);
  CHECK(extnum_order(three, ExternalNumber(3, Neutrix::galaxy())) == ExtOrder::overlapping);
  CHECK(extnum_order(ExternalNumber(w.reciprocal(), Neutrix::graded(-2)),
                     ExternalNumber(Germ(2) / w, Neutrix::graded(-2))) == ExtOrder::less);
  CHECK(to_string(ExtOrder::overlapping) == "overlapping");
}

TEST_CASE("order agrees with sampled representatives") {
  oracle::Gen gen(64);
  for (int i = 0; i < 200; ++i) {
    ExternalNumber x = random_ext(gen), y = random_ext(gen);
    ExtOrder o = extnum_order(x, y);
    for (int s = 0; s < 10; ++s) {
      Germ u = sample_in(gen, x), v = sample_in(gen, y);
      if (o == ExtOrder::less) CHECK(u < v);
      if (o == ExtOrder::greater) CHECK(u > v);
    }
  }
}

TEST_CASE("truncation keeps the terms above the grade") {
  oracle::Gen gen(65);
  for (int i = 0; i < 200; ++i) {
    Germ a = gen.germ(3);
    long k = gen.integer(-3, 3);
    Germ t = truncate_above(a, k);
    CHECK(Neutrix::graded(k).contains(a - t));
    // t is a Laurent polynomial whose terms all have exponent > k
    CHECK(t.denominator().coeffs().size() == static_cast<std::size_t>(t.denominator().degree() + 1));
    CHECK(t.denominator() == Polynomial::monomial(1, static_cast<std::size_t>(t.denominator().degree())));
    for (std::size_t e = 0; e < t.numerator().coeffs().size(); ++e)
      if (t.numerator().coeff(e) != 0) CHECK(static_cast<long>(e) - t.denominator().degree() > k);
  }
}

TEST_CASE("canonical form laws") {
  oracle::Gen gen(66);
  for (int i = 0; i < 200; ++i) {
    ExternalNumber x = random_ext(gen), y = random_ext(gen), z = random_ext(gen);
    CHECK(ExternalNumber(x.center(), x.neutrix()) == x);
    CHECK(extnum_add(x, y) == extnum_add(y, x));
    CHECK(extnum_mul(x, y) == extnum_mul(y, x));
    CHECK(extnum_add(extnum_add(x, y), z) == extnum_add(x, extnum_add(y, z)));
    CHECK(extnum_mul(extnum_mul(x, y), z) == extnum_mul(x, extnum_mul(y, z)));
    CHECK(extnum_add(x, ExternalNumber(0, x.neutrix())) == x);
    CHECK(extnum_mul(ExternalNumber(1), x) == x);
    CHECK(extnum_neg(extnum_neg(x)) == x);
  }
}

TEST_CASE("sum and product contain sampled representatives") {
  oracle::Gen gen(67);
  for (int i = 0; i < 200; ++i) {
    ExternalNumber x = random_ext(gen), y = random_ext(gen);
    ExternalNumber s = extnum_add(x, y), p = extnum_mul(x, y);
    for (int j = 0; j < 20; ++j) {
      Germ u = sample_in(gen, x), v = sample_in(gen, y);
      CHECK(x.contains(u));
      CHECK(s.contains(u + v));
      CHECK(p.contains(u * v));
      CHECK(extnum_neg(x).contains(-u));
    }
  }
}
