#pragma once

#include "nsfrag/germ.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

// Codes of external subsets of the germ universe: decidable predicates that
// stand in for the standard set of defining functions.
namespace nsfrag::coding {

// One side of an interval condition. For a lower bound at L:
//   closed          a >= L
//   open            a > L
//   halo_closed     a >= L or a ~ L
//   halo_open       a > L and not a ~ L
//   past_every      a exceeds every standard rational (unlimited positive)
//   past_some       a exceeds some standard rational (not unlimited negative)
// Upper bounds mirror these.
struct Bound {
  enum class Kind { unbounded, closed, open, halo_closed, halo_open, past_every, past_some };
  Kind kind = Kind::unbounded;
  Germ at;

  static Bound none() { return {}; }
  static Bound closed(Germ g) { return {Kind::closed, std::move(g)}; }
  static Bound open(Germ g) { return {Kind::open, std::move(g)}; }
  friend bool operator==(const Bound&, const Bound&) = default;
};

bool satisfies_lower(const Bound& b, const Germ& a);
bool satisfies_upper(const Bound& b, const Germ& a);

class Predicate {
 public:
  enum class Kind { always, never, limited, infinitesimal, standard, interval, negation, conjunction, disjunction };

  static Predicate always();
  static Predicate never();
  static Predicate limited();
  static Predicate infinitesimal();
  static Predicate standard();
  static Predicate interval(Bound lo, Bound hi);
  static Predicate point(const Germ& g) { return interval(Bound::closed(g), Bound::closed(g)); }
  static Predicate negation(Predicate p);
  static Predicate conjunction(Predicate p, Predicate q);
  static Predicate disjunction(Predicate p, Predicate q);

  Kind kind() const noexcept { return kind_; }
  const Bound& lo() const noexcept { return lo_; }
  const Bound& hi() const noexcept { return hi_; }
  const std::vector<Predicate>& children() const noexcept { return children_; }

  bool holds(const Germ& a) const;
  // Every germ appearing as an interval endpoint.
  void endpoints(std::vector<Germ>& out) const;
  std::string to_string() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;

 private:
  Kind kind_ = Kind::always;
  Bound lo_;
  Bound hi_;
  std::vector<Predicate> children_;
};

class CodedSet {
 public:
  explicit CodedSet(Predicate p, std::string universe = "Q(w)")
      : predicate_(std::move(p)), universe_(std::move(universe)) {}

  const Predicate& predicate() const noexcept { return predicate_; }
  const std::string& universe() const noexcept { return universe_; }
  std::string to_string() const { return predicate_.to_string(); }

 private:
  Predicate predicate_;
  std::string universe_;
};

bool membership(const CodedSet& s, const Germ& a);

enum class SetOp { union_, intersection, difference };
// Throws UniverseMismatch when the universe labels differ.
CodedSet setops(const CodedSet& a, const CodedSet& b, SetOp op);
CodedSet complement(const CodedSet& a);

// Germs that separate every region the two predicates can distinguish:
// each endpoint, its shadow, points infinitely close on both sides at
// several scales, standard points between them, and unlimited points.
std::vector<Germ> separating_catalog(const std::vector<const Predicate*>& preds);
// Equivalence of predicates, decided on the separating catalog.
bool equivalent(const CodedSet& a, const CodedSet& b);

// Interval family k -> [lo(k), hi(k)] for integers k >= first_k. Endpoints are
// rational functions of k (germs whose indeterminate is read as k); an empty
// optional means that side is unbounded.
struct IntervalFamily {
  std::optional<Germ> lo;
  std::optional<Germ> hi;
  bool lo_closed = true;
  bool hi_closed = true;
  long first_k = 0;
  std::string universe = "Q(w)";

  CodedSet at(long k) const;
};

enum class CountableOp { union_, intersection };

struct CountableResult {
  CodedSet set;
  CountableOp op;
  IntervalFamily family;

  // For a union member, some k with a in F(k); for a non-member of an
  // intersection, some k with a not in F(k); otherwise empty.
  std::optional<long> witness(const Germ& a) const;
};

// Union requires the family to be nested increasing (lo non-increasing, hi
// non-decreasing), intersection nested decreasing. Monotonicity is decided
// exactly, not sampled; violations throw NonMonotoneGenerator.
CountableResult countable_ops(const IntervalFamily& family, CountableOp op);

}  // namespace nsfrag::coding
