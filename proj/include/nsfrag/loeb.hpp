#pragma once

#include "nsfrag/germ.hpp"
#include "nsfrag/ksequence.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

// The hyperfinite time line {i/N : 0 <= i <= N}, its internal interval sets,
// counting measure, Loeb measure, and Lebesgue measure on [0, 1].
namespace nsfrag::loeb {

class TimeLine {
 public:
  TimeLine() : n_(Germ::omega()) {}
  // Throws InvalidArgument unless n is unlimited positive.
  explicit TimeLine(Germ n);
  const Germ& size() const noexcept { return n_; }
  friend bool operator==(const TimeLine&, const TimeLine&) = default;

 private:
  Germ n_;
};

struct Piece {
  Germ lo;
  Germ hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Piece closed(Germ a, Germ b) { return {std::move(a), std::move(b), true, true}; }
  static Piece point(const Germ& a) { return {a, a, true, true}; }
  bool empty() const;
  bool contains(const Germ& x) const;
  friend bool operator==(const Piece&, const Piece&) = default;
};

// Always normalized: pieces clipped to [0, 1], nonempty, pairwise disjoint,
// sorted, and with no two pieces touching.
class InternalSet {
 public:
  InternalSet() = default;
  explicit InternalSet(std::vector<Piece> pieces, TimeLine line = {});

  static InternalSet whole(TimeLine line = {}) { return InternalSet({Piece::closed(0, 1)}, std::move(line)); }

  const TimeLine& line() const noexcept { return line_; }
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  bool contains(const Germ& x) const;
  // Every endpoint is a standard rational.
  bool is_standard() const;
  std::string to_string() const;

  friend bool operator==(const InternalSet&, const InternalSet&) = default;

 private:
  TimeLine line_;
  std::vector<Piece> pieces_;
};

InternalSet unite(const InternalSet& a, const InternalSet& b);
InternalSet intersect(const InternalSet& a, const InternalSet& b);
InternalSet complement(const InternalSet& a);  // relative to [0, 1]
InternalSet difference(const InternalSet& a, const InternalSet& b);
bool subset(const InternalSet& a, const InternalSet& b);
bool disjoint(const InternalSet& a, const InternalSet& b);

struct CountingBounds {
  Germ lower;
  Germ upper;
};

// Germ bounds on |X| / |T| from the piece widths; they differ by an infinitesimal.
CountingBounds counting_measure(const InternalSet& x);
// Shadow of the counting measure.
Rational loeb_measure(const InternalSet& x);

struct AdditivityReport {
  Rational first;
  Rational second;
  Rational together;
  bool holds() const { return together == first + second; }
};

// Throws NotDisjoint when the sets meet.
AdditivityReport finite_additivity_check(const InternalSet& a, const InternalSet& b);

// Measure of a standard set from the interval algebra, via its internal
// extension. Throws OutOfAlgebra for non-standard endpoints.
Rational lebesgue(const InternalSet& a);

// ---- sigma families -------------------------------------------------------

enum class SigmaMode { increasing, decreasing, disjoint };

std::string to_string(SigmaMode m);

struct SchemaPiece {
  KSequence lo;
  KSequence hi;
  bool lo_closed = true;
  bool hi_closed = true;
};

// Affine contraction x -> ratio * x + shift.
struct AffineMap {
  Rational ratio;
  Rational shift;
};

// Either an interval schema (endpoints are sequences in k) or a self-similar
// schema: F(0) = [0, 1] and F(k) the union of the maps applied to F(k-1).
struct SigmaFamily {
  SigmaMode mode = SigmaMode::disjoint;
  long first_k = 0;
  std::vector<SchemaPiece> pieces;
  std::vector<AffineMap> maps;

  bool self_similar() const { return !maps.empty(); }
  // Members are enumerated explicitly only up to this depth for self-similar schemas.
  static constexpr long explicit_limit = 12;

  InternalSet at(long k) const;
};

struct SigmaResult {
  // Partial values for k = first_k .. depth: measures for monotone modes,
  // partial sums for the disjoint mode.
  std::vector<std::pair<long, Rational>> partial;
  // Closed form of the partial values as a sequence in k.
  KSequence closed_form;
  ExtendedShadow limit = Rational(0);
};

// Checks the declared mode on every k <= depth (ModeViolation otherwise) and
// returns the partial values with their exact limit.
SigmaResult sigma_limit(const SigmaFamily& family, long depth);

}  // namespace nsfrag::loeb
