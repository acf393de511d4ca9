// One line per acceptance criterion; nonzero exit if any fails.

#include "nsfrag/error.hpp"
#include "nsfrag/eval.hpp"
#include "nsfrag/expr.hpp"
#include "nsfrag/extnum.hpp"
#include "nsfrag/germ.hpp"
#include "nsfrag/hull.hpp"
#include "nsfrag/loeb.hpp"
#include "nsfrag/strucmodel.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "ast_gen.hpp"
#include "oracle.hpp"

using namespace nsfrag;
using oracle::Q;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = "first failure: " + what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.ok = false;
    r.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs >= limit_seconds) {
    if (r.ok) r.detail = "over the time limit of " + std::to_string(static_cast<int>(limit_seconds)) + " s; " + r.detail;
    r.ok = false;
  }
  if (!r.ok) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", r.ok ? "PASS" : "FAIL", id, name, r.detail.c_str(), secs);
  std::fflush(stdout);
}

const Germ w = Germ::omega();

// ---- 1 ----------------------------------------------------------------------

Outcome field_order() {
  Outcome r;
  oracle::Gen gen(1001);
  long identities = 0;
  for (int i = 0; i < 1000; ++i) {
    Germ a = gen.germ(), b = gen.germ(), c = gen.germ();
    auto req = [&](bool cond, const char* law) {
      ++identities;
      r.require(cond, std::string(law) + " at triple " + std::to_string(i));
    };
    req((a + b) + c == a + (b + c), "additive associativity");
    req(a + b == b + a, "additive commutativity");
    req(a + Germ(0) == a, "additive identity");
    req(a + (-a) == Germ(0), "additive inverse");
    req((a * b) * c == a * (b * c), "multiplicative associativity");
    req(a * b == b * a, "multiplicative commutativity");
    req(a * Germ(1) == a, "multiplicative identity");
    req(a * a.reciprocal() == Germ(1), "multiplicative inverse");
    req(a * (b + c) == a * b + a * c, "distributivity");
    req(a - b == a + (-b), "subtraction");
    req(a / b == a * b.reciprocal(), "division");
    req(((a < b) + (a == b) + (a > b)) == 1, "trichotomy");
    req(!(a < b && b < c) || a < c, "transitivity");
    req(!(a < b) || a + c < b + c, "additive monotonicity");
    req(!(a < b && c > Germ(0)) || a * c < b * c, "multiplicative monotonicity");
    req(!(a > Germ(0) && b > Germ(0)) || a * b > Germ(0), "positive cone");
    req(sign(a - b) == oracle::eventual_sign(a - b), "order agrees with far evaluation");
    for (long n : {101L, 1009L}) {
      Q x(n);
      bool defined = oracle::horner(std::vector<Q>(a.denominator().coeffs().begin(), a.denominator().coeffs().end()), x) != 0 &&
                     oracle::horner(std::vector<Q>(b.denominator().coeffs().begin(), b.denominator().coeffs().end()), x) != 0;
      if (defined) {
        req(oracle::value_at(a + b, x) == oracle::value_at(a, x) + oracle::value_at(b, x), "pointwise sum");
        req(oracle::value_at(a * b, x) == oracle::value_at(a, x) * oracle::value_at(b, x), "pointwise product");
      }
    }
  }
  r.detail = "1000 triples, " + std::to_string(identities) + " identities" + (r.ok ? "" : "; " + r.detail);
  return r;
}

// ---- 2, 3 -------------------------------------------------------------------

Outcome los_exhaustive() {
  Outcome r;
  strucmodel::SweepReport s = strucmodel::los_sweep(strucmodel::SweepBounds{3, 3, 2});
  r.require(s.instances == 3180, "instance count " + std::to_string(s.instances));
  r.require(s.passed(), s.first_mismatch.value_or("mismatch"));
  r.detail = std::to_string(s.instances) + " models, " + std::to_string(s.signatures) + " signatures, " +
             std::to_string(s.los_checks) + " checks, " + std::to_string(s.quotient_checks) + " quotient checks, " +
             std::to_string(s.mismatches) + " mismatches" + (r.ok ? "" : "; " + r.detail);
  return r;
}

Outcome psi_exhaustive() {
  Outcome r;
  strucmodel::PsiReport p = strucmodel::psi_sweep(strucmodel::SweepBounds{3, 3, 0});
  r.require(p.instances == 18, "configuration count");
  r.require(p.passed(), std::to_string(p.failures) + " failures");
  r.detail = std::to_string(p.instances) + " quotients, " + std::to_string(p.pairs) + " subset pairs, " +
             std::to_string(p.failures) + " failures" + (r.ok ? "" : "; " + r.detail);
  return r;
}

// ---- 4 ----------------------------------------------------------------------

Outcome thresholds() {
  Outcome r;
  oracle::Gen gen(1004);
  long samples = 0;
  for (int i = 0; i < 200; ++i) {
    Germ a = gen.germ(3);
    Integer t = eventually_threshold(a);
    int s = sign(a);
    std::vector<Q> num(a.numerator().coeffs().begin(), a.numerator().coeffs().end());
    std::vector<Q> den(a.denominator().coeffs().begin(), a.denominator().coeffs().end());
    auto check = [&](const Q& n) {
      ++samples;
      Q d = oracle::horner(den, n);
      r.require(d != 0, "pole beyond the threshold");
      if (d != 0) r.require(oracle::qsign(oracle::horner(num, n) / d) == s, "sign beyond the threshold");
    };
    for (long j = 0; j < 200; ++j) check(Q(t + j));
    for (const char* far : {"1000", "123457", "1000000007", "1000000000000"}) {
      Q n(far);
      if (n >= Q(t)) check(n);
    }
  }
  r.detail = "200 germs, " + std::to_string(samples) + " samples" + (r.ok ? "" : "; " + r.detail);
  return r;
}

// ---- 5, 6 -------------------------------------------------------------------

Rational lead_shadow(const Germ& a) {
  long dn = a.numerator().degree(), dd = a.denominator().degree();
  if (dn < dd) return 0;
  return Rational(a.numerator().leading() / a.denominator().leading());
}

Outcome hull_metric() {
  using namespace nsfrag::hull;
  Outcome r;
  oracle::Gen gen(1005);
  auto natural = [&] {
    std::vector<Rational> c;
    int deg = static_cast<int>(gen.integer(0, 2));
    for (int i = 0; i < deg; ++i) c.push_back(gen.integer(-5, 5));
    c.push_back(gen.integer(deg == 0 ? 0 : 1, 5));
    return Germ(Polynomial(c), Polynomial(1));
  };
  std::vector<Structure> structures = {Structure::rationals(), Structure::naturals(), Structure::vectors(3)};
  for (const auto& s : structures) {
    for (int i = 0; i < 500; ++i) {
      Point a, b, c;
      for (int d = 0; d < s.dimension(); ++d) {
        bool nat = s.tag() == Structure::Tag::naturals_discrete;
        a.push_back(nat ? natural() : gen.limited_germ());
        b.push_back(nat ? natural() : gen.limited_germ());
        c.push_back(nat ? natural() : gen.limited_germ());
      }
      if (gen.integer(0, 4) == 0) b = a;
      if (gen.integer(0, 4) == 0 && s.tag() != Structure::Tag::naturals_discrete)
        for (auto& x : b) x = x + w.pow(-2);
      HullPoint pa = hull_point(s, a), pb = hull_point(s, b), pc = hull_point(s, c);
      Rational ab = hull_dist(pa, pb), bc = hull_dist(pb, pc), ac = hull_dist(pa, pc);
      Rational want = 0;
      if (s.tag() == Structure::Tag::naturals_discrete) want = a == b ? 0 : 1;
      else
        for (std::size_t d = 0; d < a.size(); ++d) want = std::max(want, Rational(abs(lead_shadow(a[d] - b[d]))));
      r.require(ab == want, s.name() + " distance against leading-term oracle");
      r.require(hull_dist(pa, pa) == 0, s.name() + " d(x, x) = 0");
      r.require((ab == 0) == (pa == pb), s.name() + " identity of indiscernibles");
      r.require(ab == hull_dist(pb, pa), s.name() + " symmetry");
      r.require(ac <= ab + bc, s.name() + " triangle inequality");
    }
  }
  for (int i = 0; i < 100; ++i) {
    Rational x = gen.rational(100, 9), y = gen.rational(100, 9);
    r.require(hull_dist(hull_point(Structure::rationals(), Germ(x)), hull_point(Structure::rationals(), Germ(y))) ==
                  abs(Rational(x - y)),
              "embedding isometry");
  }
  r.detail = "3 structures x 500 triples, 100 isometry pairs" + (r.ok ? "" : "; " + r.detail);
  return r;
}

Outcome hull_limits() {
  using namespace nsfrag::hull;
  Outcome r;
  struct Ex {
    const char* family;
    long first;
    Rational limit;
  };
  const Ex examples[] = {{"k/(k+1)", 0, 1}, {"1/3", 0, Rational(1, 3)}, {"1/k", 1, 0}};
  long certs = 0;
  for (const auto& ex : examples) {
    HullSequence seq;
    seq.family = eval::parse_family(ex.family);
    seq.first_k = ex.first;
    HullLimit lim = hull_limit(seq);
    r.require(lim.point.canonical() == Point{Germ(ex.limit)}, std::string(ex.family) + " limit");
    r.require(lim.certificate.size() == 21, "certificate covers j <= 20");
    for (const auto& c : lim.certificate) {
      ++certs;
      Rational direct = abs(Rational(ex.limit - seq.family.at(c.k).constant_value()));
      r.require(c.k == c.j + 1, "modulus j + 1");
      r.require(c.distance == direct, "certificate distance");
      r.require(direct <= Rational(1, c.j + 1), "distance bound 1/(j+1)");
    }
  }
  r.detail = "limits 1, 1/3, 0; " + std::to_string(certs) + " modulus certificates" + (r.ok ? "" : "; " + r.detail);
  return r;
}

// ---- 7, 8 -------------------------------------------------------------------

Outcome lebesgue_agreement() {
  using namespace nsfrag::loeb;
  Outcome r;
  oracle::Gen gen(1007);
  for (int i = 0; i < 100; ++i) {
    int n = static_cast<int>(gen.integer(1, 8));
    std::vector<Piece> ps;
    std::vector<std::pair<Q, Q>> spans;
    for (int j = 0; j < n; ++j) {
      Q a(gen.integer(0, 60), 60), b(gen.integer(0, 60), 60);
      a.canonicalize();
      b.canonicalize();
      if (a > b) std::swap(a, b);
      ps.push_back({Germ(a), Germ(b), gen.coin(), gen.coin()});
      spans.emplace_back(a, b);
    }
    std::sort(spans.begin(), spans.end());
    Q total = 0, reach = -1;
    for (const auto& [a, b] : spans) {
      Q from = std::max(a, reach);
      if (b > from) total += b - from;
      reach = std::max(reach, b);
    }
    r.require(lebesgue(InternalSet(ps)) == total, "random union " + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) {
    Q a(gen.integer(0, 99), 100), b(gen.integer(0, 99), 100), c(gen.integer(0, 100), 100);
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    if (a > b) std::swap(a, b);
    r.require(lebesgue(InternalSet({{Germ(a), Germ(b), false, false}})) == b - a, "l((a,b)) = b - a");
    r.require(lebesgue(InternalSet({Piece::point(Germ(c))})) == 0, "l({c}) = 0");
  }
  auto measure = [](const char* text) { return lebesgue(eval::internal_set_of(expr::parse(text, expr::Mode::set))); };
  r.require(measure("(1/4, 3/4)") == Rational(1, 2), "l((1/4,3/4)) = 1/2");
  r.require(measure("{1/3}") == 0, "l({1/3}) = 0");
  r.require(measure("[0, 1/3] | (1/2, 1]") == Rational(5, 6), "[0,1/3] | (1/2,1] = 5/6");
  r.detail = "100 random unions, 50 intervals and points, 3 fixed values" + (r.ok ? "" : "; " + r.detail);
  return r;
}

Outcome sigma_additivity() {
  using namespace nsfrag::loeb;
  Outcome r;
  std::istringstream dyadic("mode: disjoint\nstart: 0\npiece: ((1/2)^(k+1), (1/2)^k]\n");
  SigmaResult d = sigma_limit(eval::parse_sigma(dyadic).family, 30);
  r.require(d.partial.size() == 31, "dyadic depth");
  for (const auto& [k, v] : d.partial) r.require(v == 1 - pow(Rational(1, 2), k + 1), "dyadic partial sum");
  r.require(d.limit == ExtendedShadow(Rational(1)), "dyadic limit 1");

  std::istringstream cantor("mode: decreasing\nstart: 0\nmap: 1/3 0\nmap: 1/3 2/3\n");
  SigmaFamily cf = eval::parse_sigma(cantor).family;
  SigmaResult c = sigma_limit(cf, 40);
  r.require(c.partial.size() == 41, "Cantor depth");
  for (const auto& [k, v] : c.partial) r.require(v == pow(Rational(2, 3), k), "Cantor partial measure");
  r.require(c.limit == ExtendedShadow(Rational(0)), "Cantor limit 0");
  // direct piece count for small k: 2^k intervals of length 3^-k
  for (long k = 0; k <= 6; ++k) {
    InternalSet s = cf.at(k);
    r.require(s.pieces().size() == (std::size_t{1} << k), "Cantor piece count");
    for (const auto& p : s.pieces())
      r.require(Rational(p.hi.constant_value() - p.lo.constant_value()) == pow(Rational(1, 3), k), "Cantor piece width");
  }
  r.detail = "dyadic k <= 30 -> 1, Cantor k <= 40 -> 0" + (r.ok ? "" : "; " + r.detail);
  return r;
}

// ---- 9 ----------------------------------------------------------------------

Outcome external_numbers() {
  using namespace nsfrag::ext;
  Outcome r;
  oracle::Gen gen(1009);
  auto neutrix = [&] {
    long pick = gen.integer(0, 9);
    if (pick == 0) return Neutrix::zero();
    if (pick == 1) return Neutrix::all();
    return Neutrix::graded(gen.integer(-3, 2));
  };
  auto number = [&] { return ExternalNumber(gen.germ(), neutrix()); };
  auto sample = [&](const ExternalNumber& x) {
    const Neutrix& n = x.neutrix();
    Germ e = 0;
    if (n.kind() == Neutrix::Kind::all) e = gen.germ();
    else if (n.kind() == Neutrix::Kind::graded && gen.integer(0, 5) != 0) e = gen.limited_germ() * w.pow(n.grade());
    return x.center() + e;
  };
  long samples = 0;
  for (int i = 0; i < 500; ++i) {
    ExternalNumber x = number(), y = number(), z = number();
    r.require(ExternalNumber(x.center(), x.neutrix()) == x, "canonical form idempotent");
    r.require(extnum_add(x, y) == extnum_add(y, x), "add commutative");
    r.require(extnum_mul(x, y) == extnum_mul(y, x), "mul commutative");
    r.require(extnum_add(extnum_add(x, y), z) == extnum_add(x, extnum_add(y, z)), "add associative");
    r.require(extnum_mul(extnum_mul(x, y), z) == extnum_mul(x, extnum_mul(y, z)), "mul associative");
    r.require(extnum_add(x, ExternalNumber(0, x.neutrix())) == x, "absorption");
    ExternalNumber s = extnum_add(x, y), p = extnum_mul(x, y);
    for (int j = 0; j < 20; ++j) {
      Germ u = sample(x), v = sample(y);
      samples += 2;
      r.require(x.contains(u) && y.contains(v), "sampled representative lies in its operand");
      r.require(s.contains(u + v), "sum containment");
      r.require(p.contains(u * v), "product containment");
    }
  }
  r.detail = "500 triples, " + std::to_string(samples) + " sampled representatives" + (r.ok ? "" : "; " + r.detail);
  return r;
}

// ---- 10 ---------------------------------------------------------------------

Outcome round_trip() {
  Outcome r;
  int count = 0;
  for (expr::Mode mode : {expr::Mode::germ, expr::Mode::set, expr::Mode::ext, expr::Mode::family}) {
    oracle::TreeGen gen(1010 + static_cast<int>(mode), mode);
    for (int i = 0; i < 250; ++i, ++count) {
      expr::Node t = gen.tree(8);
      std::string text = expr::format(t);
      r.require(expr::parse(text, mode) == t, "round trip of " + text);
    }
  }
  r.detail = std::to_string(count) + " trees of depth <= 8 over four modes" + (r.ok ? "" : "; " + r.detail);
  return r;
}

}  // namespace

int main() {
  criterion(1, "field/order suite", 10, field_order);
  criterion(2, "Los exhaustive oracle", 60, los_exhaustive);
  criterion(3, "Psi preservation", 0, psi_exhaustive);
  criterion(4, "transfer-threshold soundness", 0, thresholds);
  criterion(5, "hull metric suite", 0, hull_metric);
  criterion(6, "completeness diagonal", 0, hull_limits);
  criterion(7, "Lebesgue agreement", 0, lebesgue_agreement);
  criterion(8, "sigma-additivity", 0, sigma_additivity);
  criterion(9, "external-number suite", 0, external_numbers);
  criterion(10, "parser round trip", 0, round_trip);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
