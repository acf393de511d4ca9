#include "nsfrag/eval.hpp"

#include "nsfrag/error.hpp"

#include <istream>
#include <sstream>

namespace nsfrag::eval {

using expr::Kind;
using expr::Node;

namespace {

long integer_exponent(const Node& e) {
  bool negative = e.kind == Kind::neg;
  const Node& n = negative ? e.children[0] : e;
  if (n.kind != Kind::number || n.number.get_den() != 1 || !n.number.get_num().fits_slong_p())
    throw TypeMismatch("exponent must be an integer literal");
  long v = n.number.get_num().get_si();
  return negative ? -v : v;
}

[[noreturn]] void mismatch(const Node& n, const std::string& expected) {
  throw TypeMismatch("expected " + expected + ", found '" + expr::format(n) + "'");
}

bool compare_holds(expr::CmpOp op, std::strong_ordering c) {
  switch (op) {
    case expr::CmpOp::lt:
      return c < 0;
    case expr::CmpOp::le:
      return c <= 0;
    case expr::CmpOp::gt:
      return c > 0;
    case expr::CmpOp::ge:
      return c >= 0;
    case expr::CmpOp::eq:
      return c == 0;
    case expr::CmpOp::ne:
      return c != 0;
  }
  return false;
}

}  // namespace

Germ germ_of(const Node& n) {
  switch (n.kind) {
    case Kind::number:
      return Germ(n.number);
    case Kind::var_w:
      return Germ::omega();
    case Kind::neg:
      return -germ_of(n.children[0]);
    case Kind::add:
      return germ_of(n.children[0]) + germ_of(n.children[1]);
    case Kind::sub:
      return germ_of(n.children[0]) - germ_of(n.children[1]);
    case Kind::mul:
      return germ_of(n.children[0]) * germ_of(n.children[1]);
    case Kind::div:
      return germ_of(n.children[0]) / germ_of(n.children[1]);
    case Kind::pow:
      return germ_of(n.children[0]).pow(integer_exponent(n.children[1]));
    case Kind::call:
      if (n.head == expr::Head::shadow) {
        ExtendedShadow s = shadow(germ_of(n.children[0]));
        if (!s.is_finite()) throw NotFinite("shadow of an unlimited germ is " + s.to_string());
        return Germ(s.value());
      }
      mismatch(n, "a number");
    case Kind::var_k:
      throw TypeMismatch("'k' is not a germ");
    default:
      mismatch(n, "a number");
  }
}

bool truth_of(const Node& n) {
  switch (n.kind) {
    case Kind::compare:
      return compare_holds(n.cmp, compare(germ_of(n.children[0]), germ_of(n.children[1])));
    case Kind::call: {
      Germ g = germ_of(n.children[0]);
      switch (n.head) {
        case expr::Head::limited:
          return is_limited(g);
        case expr::Head::inf:
          return is_infinitesimal(g);
        case expr::Head::std:
          return is_standard(g);
        case expr::Head::shadow:
          break;
      }
      mismatch(n, "a truth value");
    }
    case Kind::complement:
      return !truth_of(n.children[0]);
    case Kind::intersect:
      return truth_of(n.children[0]) && truth_of(n.children[1]);
    case Kind::unite:
      return truth_of(n.children[0]) || truth_of(n.children[1]);
    default:
      mismatch(n, "a truth value");
  }
}

Value evaluate(const Node& n) {
  switch (n.kind) {
    case Kind::compare:
    case Kind::complement:
    case Kind::intersect:
    case Kind::unite:
      return truth_of(n);
    case Kind::call:
      if (n.head == expr::Head::shadow) return shadow(germ_of(n.children[0]));
      return truth_of(n);
    default:
      return germ_of(n);
  }
}

coding::Predicate predicate_of(const Node& n) {
  using coding::Bound;
  using coding::Predicate;
  switch (n.kind) {
    case Kind::set_word:
      switch (n.head) {
        case expr::Head::limited:
          return Predicate::limited();
        case expr::Head::inf:
          return Predicate::infinitesimal();
        case expr::Head::std:
          return Predicate::standard();
        case expr::Head::shadow:
          break;
      }
      mismatch(n, "a set");
    case Kind::interval: {
      Germ lo = germ_of(n.children[0]);
      Germ hi = germ_of(n.children[1]);
      return Predicate::interval(n.lo_closed ? Bound::closed(lo) : Bound::open(lo),
                                 n.hi_closed ? Bound::closed(hi) : Bound::open(hi));
    }
    case Kind::singleton:
      return Predicate::point(germ_of(n.children[0]));
    case Kind::complement:
      return Predicate::negation(predicate_of(n.children[0]));
    case Kind::intersect:
      return Predicate::conjunction(predicate_of(n.children[0]), predicate_of(n.children[1]));
    case Kind::unite:
      return Predicate::disjunction(predicate_of(n.children[0]), predicate_of(n.children[1]));
    default:
      mismatch(n, "a set");
  }
}

loeb::InternalSet internal_set_of(const Node& n, const loeb::TimeLine& line) {
  switch (n.kind) {
    case Kind::interval:
      return loeb::InternalSet({{germ_of(n.children[0]), germ_of(n.children[1]), n.lo_closed, n.hi_closed}}, line);
    case Kind::singleton:
      return loeb::InternalSet({loeb::Piece::point(germ_of(n.children[0]))}, line);
    case Kind::complement:
      return loeb::complement(internal_set_of(n.children[0], line));
    case Kind::intersect:
      return loeb::intersect(internal_set_of(n.children[0], line), internal_set_of(n.children[1], line));
    case Kind::unite:
      return loeb::unite(internal_set_of(n.children[0], line), internal_set_of(n.children[1], line));
    case Kind::set_word:
      throw OutOfAlgebra("'" + expr::format(n) + "' is not in the interval algebra");
    default:
      mismatch(n, "a set");
  }
}

BivariateGerm family_of(const Node& n) {
  switch (n.kind) {
    case Kind::number:
      return BivariateGerm(n.number);
    case Kind::var_w:
      return BivariateGerm::w();
    case Kind::var_k:
      return BivariateGerm::k();
    case Kind::neg:
      return -family_of(n.children[0]);
    case Kind::add:
      return family_of(n.children[0]) + family_of(n.children[1]);
    case Kind::sub:
      return family_of(n.children[0]) - family_of(n.children[1]);
    case Kind::mul:
      return family_of(n.children[0]) * family_of(n.children[1]);
    case Kind::div:
      return family_of(n.children[0]) / family_of(n.children[1]);
    case Kind::pow:
      return family_of(n.children[0]).pow(integer_exponent(n.children[1]));
    default:
      mismatch(n, "a family in k and w");
  }
}

Germ k_germ_of(const Node& n) { return family_of(n).as_k_germ(); }

KSequence sequence_of(const Node& n) {
  switch (n.kind) {
    case Kind::number:
      return KSequence(n.number);
    case Kind::var_k:
      return KSequence::k();
    case Kind::var_w:
      throw TypeMismatch("sequences in k cannot mention w");
    case Kind::neg:
      return -sequence_of(n.children[0]);
    case Kind::add:
      return sequence_of(n.children[0]) + sequence_of(n.children[1]);
    case Kind::sub:
      return sequence_of(n.children[0]) - sequence_of(n.children[1]);
    case Kind::mul:
      return sequence_of(n.children[0]) * sequence_of(n.children[1]);
    case Kind::div:
      return sequence_of(n.children[0]) / sequence_of(n.children[1]);
    case Kind::pow: {
      const Node& e = n.children[1];
      bool literal = e.kind == Kind::number || (e.kind == Kind::neg && e.children[0].kind == Kind::number);
      if (literal) return sequence_of(n.children[0]).pow(integer_exponent(e));
      // base^(a*k + b) with a constant base and integer a, b.
      KSequence base = sequence_of(n.children[0]);
      KSequence ex = sequence_of(e);
      if (!base.is_rational() || !base.rational_part().is_constant())
        throw TypeMismatch("a power with exponent in k needs a constant base");
      if (!ex.is_rational()) throw TypeMismatch("exponent must be affine in k");
      Germ g = ex.rational_part();
      if (!g.denominator().is_constant() || g.numerator().degree() > 1)
        throw TypeMismatch("exponent must be affine in k");
      Rational a = g.numerator().coeff(1), b = g.numerator().coeff(0);
      if (a.get_den() != 1 || b.get_den() != 1 || !a.get_num().fits_slong_p() || !b.get_num().fits_slong_p())
        throw TypeMismatch("exponent must have integer coefficients");
      Rational r = base.rational_part().constant_value();
      if (r == 0) throw DivisionByZero("zero base with an exponent in k");
      return KSequence::geometric(pow(r, b.get_num().get_si()), pow(r, a.get_num().get_si()));
    }
    default:
      mismatch(n, "a sequence in k");
  }
}

ext::ExternalNumber external_of(const Node& n) {
  using ext::ExternalNumber;
  using ext::Neutrix;
  switch (n.kind) {
    case Kind::number:
      return ExternalNumber(Germ(n.number));
    case Kind::var_w:
      return ExternalNumber(Germ::omega());
    case Kind::neutrix:
      switch (n.neutrix) {
        case expr::NeutrixLit::monad:
          return ExternalNumber(Germ(0), Neutrix::monad());
        case expr::NeutrixLit::galaxy:
          return ExternalNumber(Germ(0), Neutrix::galaxy());
        case expr::NeutrixLit::graded:
          return ExternalNumber(Germ(0), Neutrix::graded(n.grade));
      }
      break;
    case Kind::neg:
      return ext::extnum_neg(external_of(n.children[0]));
    case Kind::add:
      return ext::extnum_add(external_of(n.children[0]), external_of(n.children[1]));
    case Kind::sub:
      return ext::extnum_add(external_of(n.children[0]), ext::extnum_neg(external_of(n.children[1])));
    case Kind::mul:
      return ext::extnum_mul(external_of(n.children[0]), external_of(n.children[1]));
    case Kind::div: {
      ExternalNumber d = external_of(n.children[1]);
      if (d.neutrix().kind() != Neutrix::Kind::zero) throw TypeMismatch("division by an external number with a neutrix");
      if (d.center().is_zero()) throw DivisionByZero("division by zero");
      return ext::extnum_mul(external_of(n.children[0]), ExternalNumber(d.center().reciprocal()));
    }
    case Kind::pow: {
      long e = integer_exponent(n.children[1]);
      ExternalNumber b = external_of(n.children[0]);
      if (e < 0) {
        if (b.neutrix().kind() != Neutrix::Kind::zero) throw TypeMismatch("negative power of an external number");
        return ExternalNumber(b.center().pow(e));
      }
      ExternalNumber acc(Germ(1));
      for (long i = 0; i < e; ++i) acc = ext::extnum_mul(acc, b);
      return acc;
    }
    default:
      break;
  }
  mismatch(n, "an external number");
}

Germ parse_germ(std::string_view text) { return germ_of(expr::parse(text, expr::Mode::germ)); }

coding::CodedSet parse_coded_set(std::string_view text) {
  return coding::CodedSet(predicate_of(expr::parse(text, expr::Mode::set)));
}

BivariateGerm parse_family(std::string_view text) { return family_of(expr::parse(text, expr::Mode::family)); }

SigmaSpec parse_sigma(std::istream& in) {
  SigmaSpec spec;
  bool have_mode = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    auto bad = [&](const std::string& msg) {
      throw InvalidArgument("sigma file line " + std::to_string(lineno) + ": " + msg);
    };
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (colon == std::string::npos) bad("expected 'key: value'");
    std::string key = line.substr(0, colon);
    std::string value = line.substr(colon + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::istringstream vs(value);
    if (key == "mode") {
      std::string m;
      vs >> m;
      if (m == "increasing") spec.family.mode = loeb::SigmaMode::increasing;
      else if (m == "decreasing") spec.family.mode = loeb::SigmaMode::decreasing;
      else if (m == "disjoint") spec.family.mode = loeb::SigmaMode::disjoint;
      else bad("unknown mode '" + m + "'");
      have_mode = true;
    } else if (key == "start") {
      if (!(vs >> spec.family.first_k)) bad("expected an integer");
    } else if (key == "depth") {
      long d;
      if (!(vs >> d)) bad("expected an integer");
      spec.depth = d;
    } else if (key == "piece") {
      Node n = expr::parse(value, expr::Mode::family);
      if (n.kind != Kind::interval) bad("a piece must be an interval literal");
      spec.family.pieces.push_back(
          {sequence_of(n.children[0]), sequence_of(n.children[1]), n.lo_closed, n.hi_closed});
    } else if (key == "map") {
      std::string r, t;
      if (!(vs >> r >> t)) bad("expected 'map: RATIO SHIFT'");
      spec.family.maps.push_back({parse_rational(r), parse_rational(t)});
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  if (!have_mode) throw InvalidArgument("sigma file must declare a mode");
  if (!spec.family.pieces.empty() && !spec.family.maps.empty())
    throw InvalidArgument("sigma file mixes pieces and maps");
  if (spec.family.pieces.empty() && spec.family.maps.empty()) throw InvalidArgument("sigma file has no pieces or maps");
  return spec;
}

}  // namespace nsfrag::eval
