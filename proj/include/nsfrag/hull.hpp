#pragma once

#include "nsfrag/bivariate.hpp"
#include "nsfrag/germ.hpp"

#include <string>
#include <vector>

// Nonstandard hulls of the built-in standard metric structures: finite points
// modulo infinitesimal distance, each class held by a canonical representative.
namespace nsfrag::hull {

using Point = std::vector<Germ>;

class Structure {
 public:
  enum class Tag { rationals_abs, naturals_discrete, rationals_vector };

  static Structure rationals() { return Structure(Tag::rationals_abs, 1); }
  static Structure naturals() { return Structure(Tag::naturals_discrete, 1); }
  // Q^d with the max metric.
  static Structure vectors(int d);

  Tag tag() const noexcept { return tag_; }
  int dimension() const noexcept { return dim_; }
  std::string name() const;

  // Germ-valued distance of two points of the right dimension.
  Germ distance(const Point& a, const Point& b) const;
  // Throws NotInCarrier for points outside the structure.
  void check_carrier(const Point& p) const;

  friend bool operator==(const Structure&, const Structure&) = default;

 private:
  Structure(Tag t, int d) : tag_(t), dim_(d) {}
  Tag tag_;
  int dim_;
};

class HullPoint {
 public:
  const Structure& structure() const noexcept { return structure_; }
  const Point& representative() const noexcept { return representative_; }
  const Point& canonical() const noexcept { return canonical_; }
  std::string to_string() const;

  // Equality in the hull: equal canonical forms.
  friend bool operator==(const HullPoint& a, const HullPoint& b) {
    return a.structure_ == b.structure_ && a.canonical_ == b.canonical_;
  }

 private:
  friend HullPoint hull_point(const Structure& s, const Point& g);
  HullPoint(Structure s, Point rep, Point canon)
      : structure_(s), representative_(std::move(rep)), canonical_(std::move(canon)) {}
  Structure structure_;
  Point representative_;
  Point canonical_;
};

// Throws NotFinite when the point is at unlimited distance from the origin.
HullPoint hull_point(const Structure& s, const Point& g);
inline HullPoint hull_point(const Structure& s, const Germ& g) { return hull_point(s, Point{g}); }

// Shadow of the germ distance. Throws StructureMismatch across structures.
Rational hull_dist(const HullPoint& p, const HullPoint& q);

// Limited points of Q and Q^d; standard points of the discrete naturals.
bool approachable(const Structure& s, const Point& g);
inline bool approachable(const Structure& s, const Germ& g) { return approachable(s, Point{g}); }

// A k-indexed family with an affine Cauchy modulus: for k, k' >= a*j + b the
// members are at hull distance < 1/(j+1).
struct HullSequence {
  Structure structure = Structure::rationals();
  BivariateGerm family;
  long first_k = 0;
  long modulus_slope = 1;
  long modulus_offset = 1;
  long check_bound = 20;

  long modulus(long j) const { return modulus_slope * j + modulus_offset; }
};

struct LimitCertificate {
  long j;
  long k;
  Rational distance;  // hull_dist(limit, F_k), at most 1/(j+1)
};

struct HullLimit {
  HullPoint point;
  std::vector<LimitCertificate> certificate;
};

// Hull point of the diagonal F(w, w), after checking the Cauchy modulus on
// samples for every j <= check_bound. Throws ModulusViolation on failure.
HullLimit hull_limit(const HullSequence& seq);

// Hull of Q^d as a normed space.
HullPoint normed_hull(int d, const Point& v);
HullPoint operator+(const HullPoint& a, const HullPoint& b);
HullPoint scale(const Rational& q, const HullPoint& a);

}  // namespace nsfrag::hull
