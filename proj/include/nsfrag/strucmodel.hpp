#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

// Exhaustive finite-model oracle. Over a finite index set every ultrafilter is
// principal, so the ultrapower of a finite structure can be built outright and
// Los's theorem, together with the set codings, checked by enumeration.
namespace nsfrag::strucmodel {

// Subset of a finite index set {0, ..., size-1}, bit i for element i.
using IndexSet = std::uint32_t;
// A map index -> carrier, encoded in base |carrier| with digit i = value at i.
using FunctionCode = std::uint32_t;

struct FinIndex {
  int size = 1;
  int w = 0;

  FinIndex() = default;
  FinIndex(int size, int w);
  IndexSet all() const { return (IndexSet{1} << size) - 1; }
};

class PrincipalUltrafilter {
 public:
  explicit PrincipalUltrafilter(FinIndex index);

  const FinIndex& index() const noexcept { return index_; }
  // Every member, in increasing order of bitmask.
  const std::vector<IndexSet>& members() const noexcept { return members_; }
  bool contains(IndexSet s) const { return lookup_.at(s) != 0; }

  // Exhaustive verification of the filter and ultra properties.
  bool is_upward_closed() const;
  bool is_closed_under_intersection() const;
  bool is_ultra() const;

 private:
  FinIndex index_;
  std::vector<IndexSet> members_;
  std::vector<char> lookup_;
};

PrincipalUltrafilter build_ultrafilter(const FinIndex& index);

// Finite carrier with a binary membership-like relation and optional unary relations.
struct Structure {
  std::vector<std::string> names;
  std::vector<char> membership;  // membership[a * size + b]: a E b
  std::map<std::string, std::vector<char>> unary;

  Structure() = default;
  explicit Structure(int carrier_size);
  // Binary relation given as a bit code: bit a*size+b set iff a E b.
  static Structure from_relation_code(int carrier_size, std::uint64_t code);

  int size() const { return static_cast<int>(names.size()); }
  bool member(int a, int b) const { return membership[static_cast<std::size_t>(a * size() + b)] != 0; }
  void set_member(int a, int b, bool v = true) { membership[static_cast<std::size_t>(a * size() + b)] = v; }
  int element(const std::string& name) const;
};

class FinUltrapower {
 public:
  FinUltrapower(Structure base, PrincipalUltrafilter ultrafilter);

  const Structure& base() const noexcept { return base_; }
  const PrincipalUltrafilter& ultrafilter() const noexcept { return uf_; }
  const FinIndex& index() const noexcept { return uf_.index(); }

  FunctionCode function_count() const noexcept { return function_count_; }
  int value(FunctionCode f, int i) const;
  FunctionCode encode(const std::vector<int>& values) const;
  FunctionCode constant(int x) const;

  int class_count() const noexcept { return static_cast<int>(classes_.size()); }
  int class_of(FunctionCode f) const { return class_of_[f]; }
  const std::vector<FunctionCode>& class_members(int cls) const { return classes_[static_cast<std::size_t>(cls)]; }
  // Induced relations on classes, computed through the ultrafilter.
  bool class_member(int a, int b) const { return memrel_[static_cast<std::size_t>(a * class_count() + b)] != 0; }
  bool class_unary(const std::string& name, int a) const;
  // Class of the constant map c_x.
  int embed(int x) const { return class_of(constant(x)); }

  // The relations were found independent of the chosen representatives.
  bool well_defined() const noexcept { return well_defined_; }
  // {i | f(i) = g(i)}
  IndexSet agreement(FunctionCode f, FunctionCode g) const;

 private:
  Structure base_;
  PrincipalUltrafilter uf_;
  FunctionCode function_count_ = 0;
  std::vector<int> class_of_;
  std::vector<std::vector<FunctionCode>> classes_;
  std::vector<char> memrel_;
  std::map<std::string, std::vector<char>> unary_;
  bool well_defined_ = true;
};

FinUltrapower ultrapower_quotient(const Structure& base, const FinIndex& index);

// First-order formula over {E, =}, unary relations, connectives, and plain or
// bounded quantifiers. Depth is the height of the tree (atoms have depth 0).
class Formula {
 public:
  enum class Op {
    member,
    equal,
    relation,
    negation,
    conjunction,
    disjunction,
    implication,
    exists,
    forall,
    exists_in,
    forall_in,
  };

  static Formula member(std::string a, std::string b);
  static Formula equal(std::string a, std::string b);
  static Formula relation(std::string name, std::string a);
  static Formula negation(Formula f);
  static Formula conjunction(Formula f, Formula g);
  static Formula disjunction(Formula f, Formula g);
  static Formula implication(Formula f, Formula g);
  static Formula exists(std::string var, Formula f);
  static Formula forall(std::string var, Formula f);
  // Quantifier over members of `bound`: exists var (var E bound and f).
  static Formula exists_in(std::string var, std::string bound, Formula f);
  static Formula forall_in(std::string var, std::string bound, Formula f);

  Op op() const noexcept { return op_; }
  const std::string& a() const noexcept { return a_; }
  const std::string& b() const noexcept { return b_; }
  const std::vector<Formula>& children() const noexcept { return children_; }

  int depth() const;
  std::set<std::string> free_variables() const;
  std::string to_string() const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Op op, std::string a, std::string b, std::vector<Formula> children);
  Op op_;
  std::string a_;
  std::string b_;
  std::vector<Formula> children_;
};

struct LosReport {
  bool quotient_holds = false;
  IndexSet pointwise = 0;  // {i | phi holds at i}
  bool pointwise_large = false;
  bool agree() const { return quotient_holds == pointwise_large; }
};

// Evaluates phi in the quotient (parameters replaced by their classes) and
// pointwise at every index, and compares. Throws MalformedFormula when the
// depth exceeds max_depth, a free variable has no parameter, or a relation
// name is unknown.
LosReport los_check(const FinUltrapower& up, const Formula& phi, const std::map<std::string, FunctionCode>& params,
                    int max_depth = 2);

// A subset of the quotient's classes, and its codes.
using ClassSet = std::vector<char>;     // indexed by class id
using FunctionSet = std::vector<char>;  // indexed by function code

struct PsiCode {
  FunctionSet functions;                  // every f whose class lies in X
  std::vector<std::vector<FunctionCode>> classes;  // the classes of X themselves, as sets of functions
};

PsiCode psi_finite(const FinUltrapower& up, const ClassSet& x);

struct SetOpReport {
  bool empty_preserved = false;
  bool union_preserved = false;
  bool intersection_preserved = false;
  bool difference_preserved = false;
  bool monotone = false;  // X subset Y  iff  psi(X) subset psi(Y)
  bool ok() const {
    return empty_preserved && union_preserved && intersection_preserved && difference_preserved && monotone;
  }
};

SetOpReport setop_check(const FinUltrapower& up, const ClassSet& x, const ClassSet& y);

// ---- exhaustive sweeps -------------------------------------------------

struct SweepBounds {
  int max_index = 3;
  int max_carrier = 3;
  int depth = 2;
};

struct Instance {
  int index_size = 1;
  int w = 0;
  int carrier = 1;
  std::uint64_t relation = 0;
};

// Every (index size, w, carrier size, binary relation) within the bounds.
std::vector<Instance> enumerate_instances(const SweepBounds& bounds);

// Truth tables of a two-variable formula (free variables among x, y) in the
// base structure and in the quotient; bit x*d+y for domain size d.
struct Signature {
  std::uint64_t base = 0;
  std::uint64_t quotient = 0;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

// Signatures of every formula of depth <= depth in the variables x, y: the
// closure of the atoms under negation, conjunction, disjunction, plain and
// bounded quantifiers. Each formula's pair of truth tables is determined by
// those of its children, so the closure covers all formulas exactly.
std::set<Signature> signature_closure(const FinUltrapower& up, int depth);

// Same set, computed the slow way: enumerate every formula and evaluate it
// directly in both structures. Kept to cross-check the table kernel.
std::set<Signature> reference_signatures(const FinUltrapower& up, int depth);

// Every formula of depth <= depth over the fixed variables x, y.
std::vector<Formula> enumerate_formulas(int depth);

struct SweepReport {
  std::uint64_t instances = 0;
  std::uint64_t signatures = 0;       // distinct formula signatures checked
  std::uint64_t los_checks = 0;       // signature x parameter-pair checks
  std::uint64_t quotient_checks = 0;  // Phi_w agreement checks
  std::uint64_t mismatches = 0;
  std::optional<std::string> first_mismatch;
  bool passed() const { return mismatches == 0; }
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

struct PsiReport {
  std::uint64_t instances = 0;
  std::uint64_t pairs = 0;
  std::uint64_t failures = 0;
  bool passed() const { return failures == 0; }
  friend bool operator==(const PsiReport&, const PsiReport&) = default;
};

enum class Execution { serial, parallel };

// Los and quotient checks for one ultrapower, all formulas up to depth.
SweepReport check_model(const FinUltrapower& up, int depth);
SweepReport check_instance(const Instance& inst, int depth);
SweepReport los_sweep(const SweepBounds& bounds, Execution exec = Execution::parallel);
SweepReport los_sweep(const std::vector<Instance>& instances, int depth, Execution exec = Execution::parallel);
PsiReport psi_sweep(const SweepBounds& bounds, Execution exec = Execution::parallel);

// Plain-text model description:
//   carrier a b c        element names
//   member a b           a E b (repeatable)
//   relation P a b       unary relation P holds of a and b (optional)
//   index 3              index-set size
//   w 1                  distinguished index
// '#' starts a comment.
struct ModelFile {
  Structure base;
  FinIndex index;
};

ModelFile parse_model(std::istream& in);

}  // namespace nsfrag::strucmodel
