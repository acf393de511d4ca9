#include "nsfrag/expr.hpp"

#include "nsfrag/error.hpp"
#include "nsfrag/germ.hpp"

#include <cctype>
#include <utility>

namespace nsfrag::expr {

Node num(const Rational& q) {
  Node n;
  n.kind = Kind::number;
  n.number = q;
  return n;
}

Node w() {
  Node n;
  n.kind = Kind::var_w;
  return n;
}

Node k() {
  Node n;
  n.kind = Kind::var_k;
  return n;
}

Node neg(Node a) {
  Node n;
  n.kind = Kind::neg;
  n.children.push_back(std::move(a));
  return n;
}

Node binary(Kind kind, Node a, Node b) {
  Node n;
  n.kind = kind;
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return n;
}

Node call(Head h, Node a) {
  Node n;
  n.kind = Kind::call;
  n.head = h;
  n.children.push_back(std::move(a));
  return n;
}

Node compare(CmpOp op, Node a, Node b) {
  Node n = binary(Kind::compare, std::move(a), std::move(b));
  n.cmp = op;
  return n;
}

Node interval(Node lo, Node hi, bool lo_closed, bool hi_closed) {
  Node n = binary(Kind::interval, std::move(lo), std::move(hi));
  n.lo_closed = lo_closed;
  n.hi_closed = hi_closed;
  return n;
}

Node singleton(Node a) {
  Node n;
  n.kind = Kind::singleton;
  n.children.push_back(std::move(a));
  return n;
}

Node set_word(Head h) {
  Node n;
  n.kind = Kind::set_word;
  n.head = h;
  return n;
}

Node complement(Node a) {
  Node n;
  n.kind = Kind::complement;
  n.children.push_back(std::move(a));
  return n;
}

Node neutrix(NeutrixLit lit, long grade) {
  Node n;
  n.kind = Kind::neutrix;
  n.neutrix = lit;
  n.grade = lit == NeutrixLit::graded ? grade : 0;
  return n;
}

std::string to_string(Head h) {
  switch (h) {
    case Head::limited:
      return "limited";
    case Head::inf:
      return "inf";
    case Head::std:
      return "std";
    case Head::shadow:
      return "shadow";
  }
  return "?";
}

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::lt:
      return "<";
    case CmpOp::le:
      return "<=";
    case CmpOp::gt:
      return ">";
    case CmpOp::ge:
      return ">=";
    case CmpOp::eq:
      return "=";
    case CmpOp::ne:
      return "!=";
  }
  return "?";
}

namespace {

enum class Tok { number, ident, punct, end };

struct Token {
  Tok type = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        std::size_t f = j + 1;
        while (f < s.size() && std::isdigit(static_cast<unsigned char>(s[f]))) ++f;
        if (f == j + 1) throw ParseError("malformed decimal literal", line, col);
        j = f;
      }
      t.type = Tok::number;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.type = Tok::ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
    } else {
      static const char* two[] = {"<=", ">=", "!="};
      t.type = Tok::punct;
      bool matched = false;
      for (const char* p : two) {
        if (s.substr(i, 2) == p) {
          t.text = p;
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("+-*/^()[]{},<>=&|~").find(c) == std::string_view::npos)
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        t.text = std::string(1, c);
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.type = Tok::end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

bool is_integer_literal(const Node& n) {
  if (n.kind == Kind::number) return n.number.get_den() == 1;
  return n.kind == Kind::neg && n.children[0].kind == Kind::number && n.children[0].number.get_den() == 1;
}

class Parser {
 public:
  Parser(std::string_view input, Mode mode) : toks_(tokenize(input)), mode_(mode) {}

  Node parse_all() {
    Node n = parse_or();
    if (peek().type != Tok::end) fail("unexpected '" + peek().text + "'");
    return n;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool at_punct(std::string_view p) const { return peek().type == Tok::punct && peek().text == p; }
  bool accept(std::string_view p) {
    if (!at_punct(p)) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'" + found());
  }
  std::string found() const {
    return peek().type == Tok::end ? " but input ended" : " but found '" + peek().text + "'";
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

  bool sets_allowed() const { return mode_ == Mode::set || mode_ == Mode::family; }

  Node parse_or() {
    Node n = parse_and();
    while (accept("|")) n = binary(Kind::unite, std::move(n), parse_and());
    return n;
  }

  Node parse_and() {
    Node n = parse_not();
    while (accept("&")) n = binary(Kind::intersect, std::move(n), parse_not());
    return n;
  }

  Node parse_not() {
    if (accept("~")) return complement(parse_not());
    return parse_cmp();
  }

  Node parse_cmp() {
    Node n = parse_sum();
    static const std::pair<const char*, CmpOp> ops[] = {{"<=", CmpOp::le}, {">=", CmpOp::ge}, {"!=", CmpOp::ne},
                                                         {"<", CmpOp::lt},  {">", CmpOp::gt},  {"=", CmpOp::eq}};
    for (const auto& [text, op] : ops) {
      if (accept(text)) {
        Node rhs = parse_sum();
        for (const auto& [t2, op2] : ops)
          if (at_punct(t2)) fail("comparisons do not chain");
        return compare(op, std::move(n), std::move(rhs));
      }
    }
    return n;
  }

  Node parse_sum() {
    Node n = parse_term();
    for (;;) {
      if (accept("+")) n = binary(Kind::add, std::move(n), parse_term());
      else if (accept("-")) n = binary(Kind::sub, std::move(n), parse_term());
      else return n;
    }
  }

  Node parse_term() {
    Node n = parse_unary();
    for (;;) {
      if (accept("*")) {
        n = binary(Kind::mul, std::move(n), parse_unary());
      } else if (at_punct("/")) {
        const Token& slash = take();
        Node rhs = parse_unary();
        if (rhs.kind == Kind::number && rhs.number == 0)
          throw ZeroDenominatorLiteral("division by the literal zero", slash.line, slash.column);
        n = binary(Kind::div, std::move(n), std::move(rhs));
      } else {
        return n;
      }
    }
  }

  Node parse_unary() {
    if (accept("-")) return neg(parse_unary());
    return parse_power();
  }

  Node parse_power() {
    Node base = parse_primary();
    if (!at_punct("^")) return base;
    const Token& caret = take();
    Node exponent = accept("-") ? neg(parse_primary()) : parse_primary();
    if (mode_ != Mode::family && !is_integer_literal(exponent))
      fail_at(caret, "exponent must be an integer literal");
    return binary(Kind::pow, std::move(base), std::move(exponent));
  }

  Node parse_primary() {
    const Token& t = peek();
    if (t.type == Tok::number) {
      take();
      return num(parse_rational(t.text));
    }
    if (t.type == Tok::ident) return parse_ident();
    if (accept("(")) {
      Node first = parse_or();
      if (accept(",")) {
        if (!sets_allowed()) fail_at(t, "interval literals are not allowed in this mode");
        Node second = parse_or();
        if (accept(")")) return interval(std::move(first), std::move(second), false, false);
        if (accept("]")) return interval(std::move(first), std::move(second), false, true);
        fail("expected ')' or ']'" + found());
      }
      expect(")");
      return first;
    }
    if (accept("[")) {
      if (!sets_allowed()) fail_at(t, "interval literals are not allowed in this mode");
      Node first = parse_or();
      expect(",");
      Node second = parse_or();
      if (accept(")")) return interval(std::move(first), std::move(second), true, false);
      if (accept("]")) return interval(std::move(first), std::move(second), true, true);
      fail("expected ')' or ']'" + found());
    }
    if (accept("{")) {
      if (!sets_allowed()) fail_at(t, "singleton literals are not allowed in this mode");
      Node inner = parse_or();
      expect("}");
      return singleton(std::move(inner));
    }
    if (t.type == Tok::end) fail("unexpected end of input");
    fail("unexpected '" + t.text + "'");
  }

  Node parse_ident() {
    const Token t = take();
    if (t.text == "w") return w();
    if (t.text == "k") {
      if (mode_ != Mode::family) fail_at(t, "'k' is only allowed in family mode");
      return k();
    }
    if (t.text == "M0" || t.text == "G0" || t.text == "N") {
      if (mode_ != Mode::ext) fail_at(t, "neutrix literals are only allowed in ext mode");
      if (t.text == "M0") return neutrix(NeutrixLit::monad);
      if (t.text == "G0") return neutrix(NeutrixLit::galaxy);
      expect("(");
      bool negative = accept("-");
      if (peek().type != Tok::number) fail("expected an integer grade" + found());
      const Token g = take();
      Rational q = parse_rational(g.text);
      if (q.get_den() != 1 || !q.get_num().fits_slong_p()) fail_at(g, "neutrix grade must be an integer");
      expect(")");
      long grade = q.get_num().get_si();
      return neutrix(NeutrixLit::graded, negative ? -grade : grade);
    }
    static const std::pair<const char*, Head> heads[] = {
        {"limited", Head::limited}, {"inf", Head::inf}, {"std", Head::std}, {"shadow", Head::shadow}};
    for (const auto& [name, head] : heads) {
      if (t.text != name) continue;
      if (accept("(")) {
        Node inner = parse_or();
        expect(")");
        return call(head, std::move(inner));
      }
      if (head == Head::shadow) fail("expected '(' after shadow");
      if (!sets_allowed()) fail_at(t, "set words are not allowed in this mode");
      return set_word(head);
    }
    fail_at(t, "unknown identifier '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Mode mode_;
};

// Binding strength used both for parsing and for minimal parenthesization.
int precedence(const Node& n) {
  switch (n.kind) {
    case Kind::unite:
      return 1;
    case Kind::intersect:
      return 2;
    case Kind::complement:
      return 3;
    case Kind::compare:
      return 4;
    case Kind::add:
    case Kind::sub:
      return 5;
    case Kind::mul:
    case Kind::div:
      return 6;
    case Kind::neg:
      return 7;
    case Kind::pow:
      return 8;
    default:
      return 9;
  }
}

std::string format_number(const Rational& q) {
  if (q < 0) throw InvalidArgument("number literals are nonnegative");
  if (q.get_den() == 1) return q.get_num().get_str();
  Integer den = q.get_den();
  unsigned digits = 0;
  Integer scale = 1;
  while (den % 2 == 0 || den % 5 == 0) {
    if (den % 2 == 0) den /= 2;
    else den /= 5;
  }
  if (den != 1) throw InvalidArgument("number literal is not a finite decimal: " + q.get_str());
  while (true) {
    Rational scaled = q * Rational(scale);
    if (scaled.get_den() == 1) break;
    scale *= 10;
    ++digits;
  }
  Integer scaled = Rational(q * Rational(scale)).get_num();
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string f = frac.get_str();
  f.insert(0, digits - f.size(), '0');
  return whole.get_str() + "." + f;
}

std::string wrap(const Node& n, int min_prec);

std::string format_node(const Node& n) {
  switch (n.kind) {
    case Kind::number:
      return format_number(n.number);
    case Kind::var_w:
      return "w";
    case Kind::var_k:
      return "k";
    case Kind::neg:
      return "-" + wrap(n.children[0], 7);
    case Kind::add:
      return wrap(n.children[0], 5) + " + " + wrap(n.children[1], 6);
    case Kind::sub:
      return wrap(n.children[0], 5) + " - " + wrap(n.children[1], 6);
    case Kind::mul:
      return wrap(n.children[0], 6) + "*" + wrap(n.children[1], 7);
    case Kind::div:
      return wrap(n.children[0], 6) + "/" + wrap(n.children[1], 7);
    case Kind::pow: {
      const Node& e = n.children[1];
      std::string exp;
      if (precedence(e) == 9) exp = format_node(e);
      else if (e.kind == Kind::neg && precedence(e.children[0]) == 9) exp = "-" + format_node(e.children[0]);
      else exp = "(" + format_node(e) + ")";
      return wrap(n.children[0], 9) + "^" + exp;
    }
    case Kind::call:
      return to_string(n.head) + "(" + format_node(n.children[0]) + ")";
    case Kind::compare:
      return wrap(n.children[0], 5) + " " + to_string(n.cmp) + " " + wrap(n.children[1], 5);
    case Kind::interval:
      return std::string(n.lo_closed ? "[" : "(") + format_node(n.children[0]) + ", " + format_node(n.children[1]) +
             (n.hi_closed ? "]" : ")");
    case Kind::singleton:
      return "{" + format_node(n.children[0]) + "}";
    case Kind::set_word:
      return to_string(n.head);
    case Kind::complement:
      return "~" + wrap(n.children[0], 3);
    case Kind::intersect:
      return wrap(n.children[0], 2) + " & " + wrap(n.children[1], 3);
    case Kind::unite:
      return wrap(n.children[0], 1) + " | " + wrap(n.children[1], 2);
    case Kind::neutrix:
      switch (n.neutrix) {
        case NeutrixLit::monad:
          return "M0";
        case NeutrixLit::galaxy:
          return "G0";
        case NeutrixLit::graded:
          return "N(" + std::to_string(n.grade) + ")";
      }
  }
  throw InvalidArgument("unformattable node");
}

std::string wrap(const Node& n, int min_prec) {
  std::string s = format_node(n);
  return precedence(n) < min_prec ? "(" + s + ")" : s;
}

Node var_node(char var) { return var == 'k' ? k() : w(); }

// Nonnegative rational as a literal: an integer, or p/q.
Node magnitude_literal(const Rational& q, bool negative) {
  Node p = num(Rational(q.get_num()));
  if (negative) p = neg(std::move(p));
  if (q.get_den() == 1) return p;
  return binary(Kind::div, std::move(p), num(Rational(q.get_den())));
}

Node polynomial_ast(const Polynomial& poly, char var) {
  if (poly.is_zero()) return num(0);
  Node acc;
  bool first = true;
  for (std::size_t i = poly.coeffs().size(); i-- > 0;) {
    const Rational& c = poly.coeffs()[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    bool negative_lead = first && c < 0;
    Node term;
    if (i == 0) {
      term = magnitude_literal(mag, negative_lead);
    } else {
      Node power = i == 1 ? var_node(var) : binary(Kind::pow, var_node(var), num(Rational(static_cast<long>(i))));
      if (mag == 1) term = negative_lead ? neg(std::move(power)) : std::move(power);
      else term = binary(Kind::mul, magnitude_literal(mag, negative_lead), std::move(power));
    }
    if (first) acc = std::move(term);
    else acc = binary(c < 0 ? Kind::sub : Kind::add, std::move(acc), std::move(term));
    first = false;
  }
  return acc;
}

}  // namespace

Node parse(std::string_view input, Mode mode) { return Parser(input, mode).parse_all(); }

std::string format(const Node& node) { return format_node(node); }

Node from_germ(const Germ& g, char var) {
  Node top = polynomial_ast(g.numerator(), var);
  if (g.denominator() == Polynomial(1)) return top;
  return binary(Kind::div, std::move(top), polynomial_ast(g.denominator(), var));
}

}  // namespace nsfrag::expr
