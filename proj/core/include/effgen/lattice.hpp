#pragma once

#include <effgen/rational.hpp>

#include <compare>
#include <optional>
#include <set>
#include <vector>

namespace effgen {

struct LatticePoint {
  Int x{0};
  Int y{0};

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b) {
    return {a.x - b.x, a.y - b.y};
  }
};

/// Exact rational point of the plane.
struct RatPoint {
  Rat x{0};
  Rat y{0};

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
  friend bool operator<(const RatPoint& a, const RatPoint& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

inline Int det2(const LatticePoint& a, const LatticePoint& b) {
  return a.x * b.y - a.y * b.x;
}

/// Divides out the gcd of the coordinates. The zero vector is rejected.
LatticePoint primitive(const LatticePoint& v);

/// Closed halfplane  nx*x + ny*y >= -offset  with an integer normal.
struct Halfspace {
  Int nx{0};
  Int ny{0};
  Rat offset{0};

  friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

/// A convex subset of the plane cut out by finitely many rational halfplanes.
///
/// Empty and lower-dimensional sets are ordinary values: they arise as
/// section spaces of non-effective divisors and must compare and enumerate
/// like any other polygon. Unbounded regions are representable but carry a
/// flag; enumeration refuses them.
class RationalPolygon {
 public:
  RationalPolygon() : empty_(true), bounded_(true) {}

  static RationalPolygon from_halfspaces(std::vector<Halfspace> halfspaces);
  /// Convex hull of a finite rational point set (collinear input allowed).
  static RationalPolygon from_points(const std::vector<RatPoint>& points);

  bool is_empty() const { return empty_; }
  bool is_bounded() const { return bounded_; }
  /// -1 for the empty set, otherwise 0, 1 or 2. Requires a bounded polygon.
  int dimension() const;

  /// Hull vertices in counterclockwise order, starting at the
  /// lexicographically smallest. Requires a bounded polygon.
  const std::vector<RatPoint>& vertices() const;
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  bool contains(const RatPoint& p) const;
  bool contains(const LatticePoint& p) const;

  RationalPolygon dilated(const Rat& factor) const;  // factor > 0
  RationalPolygon translated(const RatPoint& t) const;

  /// Set equality, decided on canonical vertex lists (bounded polygons).
  friend bool operator==(const RationalPolygon& a, const RationalPolygon& b);

 private:
  std::vector<Halfspace> halfspaces_;
  std::vector<RatPoint> vertices_;
  bool empty_ = true;
  bool bounded_ = true;

  friend std::set<LatticePoint> lattice_points(const RationalPolygon&);
  friend std::optional<Int> lattice_min(const RationalPolygon&, const Int&, const Int&);
};

/// All integer points of a bounded polygon, in lexicographic order.
/// Throws std::invalid_argument("unbounded region") on unbounded input.
std::set<LatticePoint> lattice_points(const RationalPolygon& P);

/// {a + b : a in A, b in B}; empty when either factor is empty.
std::set<LatticePoint> minkowski_point_sum(const std::set<LatticePoint>& A,
                                           const std::set<LatticePoint>& B);

/// Exact minimum of dx*x + dy*y over the integer points of P, or nullopt if
/// P has none. Scans one row per lattice height, so large dilations stay
/// cheap even when full enumeration would not.
std::optional<Int> lattice_min(const RationalPolygon& P, const Int& dx, const Int& dy);

/// A lattice point at a positive integral height; the grading of every
/// section semigroup in this library.
struct GradedPoint {
  Int height{1};
  LatticePoint point;

  friend bool operator==(const GradedPoint&, const GradedPoint&) = default;
  friend bool operator<(const GradedPoint& a, const GradedPoint& b) {
    if (a.height != b.height) return a.height < b.height;
    return a.point < b.point;
  }
};

/// The cone in Z x Z^2 spanned by finitely many graded lattice points.
/// Every generator sits at height >= 1, which forces the cone to be pointed;
/// the height-h slice is h times the height-1 base polygon.
class PointedCone3 {
 public:
  static PointedCone3 from_generators(std::vector<GradedPoint> generators);
  /// Cone over a bounded polygon placed at height 1.
  static PointedCone3 over_polygon(const RationalPolygon& base);

  const std::vector<GradedPoint>& generators() const { return generators_; }
  /// Primitive generators of the extreme rays (one per base hull vertex).
  const std::vector<GradedPoint>& extreme_generators() const { return extreme_; }
  const RationalPolygon& base() const { return base_; }

  bool is_trivial() const { return generators_.empty(); }
  RationalPolygon slice(const Int& height) const;
  bool contains(const GradedPoint& g) const;

 private:
  std::vector<GradedPoint> generators_;
  std::vector<GradedPoint> extreme_;
  RationalPolygon base_;
};

/// Unique minimal generating set of the semigroup of graded lattice points,
/// computed by degree-by-degree saturation. Every basis element lies in the
/// half-open zonotope of the primitive extreme generators, so heights beyond
/// the sum of their heights cannot contribute; that sum is the scan bound.
std::vector<GradedPoint> hilbert_basis(const PointedCone3& C);

/// Whether every graded lattice point of C with height <= max_height is a
/// non-negative integral combination of `generators`.
bool generates_up_to(const PointedCone3& C, const std::vector<GradedPoint>& generators,
                     const Int& max_height);

}  // namespace effgen
