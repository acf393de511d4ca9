#pragma once

#include "nsfrag/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace nsfrag {
class Germ;
}

namespace nsfrag::expr {

// Which constructs the parser admits:
//   germ   - arithmetic in w, comparisons, predicate calls, & | ~ on truth values
//   set    - germ plus interval/singleton literals and the words limited, inf, std
//   ext    - germ plus neutrix literals M0, G0, N(k)
//   family - set plus the index variable k and exponents depending on k
enum class Mode { germ, set, ext, family };

enum class Kind {
  number,     // nonnegative finite decimal
  var_w,
  var_k,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  call,       // limited(e), inf(e), std(e), shadow(e)
  compare,
  interval,
  singleton,
  set_word,   // limited, inf, std
  complement,
  intersect,
  unite,
  neutrix,
};

enum class Head { limited, inf, std, shadow };
enum class CmpOp { lt, le, gt, ge, eq, ne };
enum class NeutrixLit { monad, galaxy, graded };

struct Node {
  Kind kind = Kind::number;
  Rational number;                // number
  Head head = Head::limited;      // call, set_word
  CmpOp cmp = CmpOp::lt;          // compare
  NeutrixLit neutrix = NeutrixLit::monad;
  long grade = 0;                 // neutrix graded
  bool lo_closed = false;         // interval
  bool hi_closed = false;
  std::vector<Node> children;

  friend bool operator==(const Node&, const Node&) = default;
};

// Builders.
Node num(const Rational& q);
Node w();
Node k();
Node neg(Node a);
Node binary(Kind kind, Node a, Node b);
Node call(Head h, Node a);
Node compare(CmpOp op, Node a, Node b);
Node interval(Node lo, Node hi, bool lo_closed, bool hi_closed);
Node singleton(Node a);
Node set_word(Head h);
Node complement(Node a);
Node neutrix(NeutrixLit lit, long grade = 0);

Node parse(std::string_view input, Mode mode);
std::string format(const Node& node);

// AST of a canonical germ in the indeterminate `var` ('w' or 'k').
Node from_germ(const Germ& g, char var = 'w');

std::string to_string(Head h);
std::string to_string(CmpOp op);

}  // namespace nsfrag::expr
