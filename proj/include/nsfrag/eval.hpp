#pragma once

#include "nsfrag/bivariate.hpp"
#include "nsfrag/coding.hpp"
#include "nsfrag/expr.hpp"
#include "nsfrag/extnum.hpp"
#include "nsfrag/germ.hpp"
#include "nsfrag/ksequence.hpp"
#include "nsfrag/loeb.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>
#include <variant>

// Interpretation of parsed expressions in each module's value domain.
// Ill-typed trees (a set where a number is expected, ...) throw TypeMismatch.
namespace nsfrag::eval {

Germ germ_of(const expr::Node& n);
bool truth_of(const expr::Node& n);
// Germ mode: a germ, a truth value, or (for a top-level shadow call) a shadow.
using Value = std::variant<Germ, bool, ExtendedShadow>;
Value evaluate(const expr::Node& n);

coding::Predicate predicate_of(const expr::Node& n);
loeb::InternalSet internal_set_of(const expr::Node& n, const loeb::TimeLine& line = {});

BivariateGerm family_of(const expr::Node& n);
// A family that does not mention w, as a germ whose indeterminate is k.
Germ k_germ_of(const expr::Node& n);
KSequence sequence_of(const expr::Node& n);

ext::ExternalNumber external_of(const expr::Node& n);

// Convenience: parse in the matching mode, then interpret.
Germ parse_germ(std::string_view text);
coding::CodedSet parse_coded_set(std::string_view text);
BivariateGerm parse_family(std::string_view text);

// Plain-text sigma-family schema, one "key: value" per line:
//   mode: increasing | decreasing | disjoint
//   start: 0                  first index (default 0)
//   depth: 30                 default depth for the certificate
//   piece: (2^(-k-1), 2^(-k)] interval with endpoints in k (repeatable)
//   map: 1/3 2/3              affine map x -> 1/3 x + 2/3 (self-similar schema)
// '#' starts a comment.
struct SigmaSpec {
  loeb::SigmaFamily family;
  std::optional<long> depth;
};

SigmaSpec parse_sigma(std::istream& in);

}  // namespace nsfrag::eval
