#pragma once

#include <effgen/lattice.hpp>

#include <memory>
#include <optional>
#include <vector>

namespace effgen {

/// A complete toric surface, given by the ordered primitive rays of its fan.
///
/// Rays are stored counterclockwise; consecutive rays span strictly convex
/// cones and the cones tile the plane. Copies are cheap (shared immutable
/// state) and all operations are pure.
class ToricSurface {
 public:
  /// Empty sentinel; only from_rays produces a usable surface.
  ToricSurface() = default;

  /// Validates, primitivizes and sorts the rays counterclockwise.
  /// Throws std::invalid_argument for fans that are not complete.
  static ToricSurface from_rays(std::vector<LatticePoint> rays);

  int ray_count() const;
  const std::vector<LatticePoint>& rays() const;
  const LatticePoint& ray(int i) const;
  std::optional<int> ray_index(const LatticePoint& v) const;

  /// det of the cone spanned by rays i and i+1 (cyclic).
  Int cone_det(int i) const;
  bool is_smooth() const;
  int picard_number() const;  // ray_count() - 2

  /// Index i of a cone (rays i, i+1) containing the given direction.
  int cone_containing(const LatticePoint& direction) const;

  Rat curve_self_intersection(int ray_index) const;
  Rat curve_pair_intersection(int i, int j) const;

  friend bool operator==(const ToricSurface& a, const ToricSurface& b);

 private:
  struct Data {
    std::vector<LatticePoint> rays;
  };
  std::shared_ptr<const Data> data_;
};

/// Torus-invariant Q-divisor: one rational coefficient per ray of a surface.
class TorusDivisor {
 public:
  /// Empty sentinel divisor on the sentinel surface.
  TorusDivisor() = default;
  TorusDivisor(ToricSurface surface, std::vector<Rat> coeffs);
  static TorusDivisor zero(const ToricSurface& surface);
  /// Coefficient 1 on one ray, 0 elsewhere.
  static TorusDivisor ray_divisor(const ToricSurface& surface, int ray_index);

  const ToricSurface& surface() const { return surface_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  const Rat& coeff(int i) const { return coeffs_.at(i); }
  Rat coeff(const LatticePoint& ray) const;

  bool is_zero() const;
  bool is_effective() const;
  bool is_integral() const;
  std::vector<LatticePoint> support() const;

  TorusDivisor& operator+=(const TorusDivisor& other);
  TorusDivisor& operator-=(const TorusDivisor& other);
  TorusDivisor& operator*=(const Rat& scalar);
  friend TorusDivisor operator+(TorusDivisor a, const TorusDivisor& b) { return a += b; }
  friend TorusDivisor operator-(TorusDivisor a, const TorusDivisor& b) { return a -= b; }
  friend TorusDivisor operator*(const Rat& s, TorusDivisor d) { return d *= s; }
  friend bool operator==(const TorusDivisor& a, const TorusDivisor& b);

 private:
  ToricSurface surface_;
  std::vector<Rat> coeffs_;
};

TorusDivisor canonical_divisor(const ToricSurface& X);

/// D . C for the invariant curve C of the given ray.
Rat divisor_curve_degree(const TorusDivisor& D, int ray_index);
Rat divisor_pairing(const TorusDivisor& A, const TorusDivisor& B);

bool is_nef(const TorusDivisor& D);
bool is_big(const TorusDivisor& D);
bool is_pseudoeffective(const TorusDivisor& D);
/// Nef but not big: the situation where no effective base-point-free
/// multiple bound is produced by this library.
bool is_fibration_case(const TorusDivisor& D);

/// { u : <u, v_rho> >= -d_rho for all rays }. Scales exactly with D.
RationalPolygon section_polytope(const TorusDivisor& D);

/// A boundary with coefficients in [0,1) on its surface.
class PairData {
 public:
  PairData(ToricSurface surface, TorusDivisor boundary);

  const ToricSurface& surface() const { return surface_; }
  const TorusDivisor& boundary() const { return boundary_; }
  /// Log smooth invariant pairs with zero rounddown are Kawamata log
  /// terminal; certification is offered exactly for those.
  bool klt_certified() const;

 private:
  ToricSurface surface_;
  TorusDivisor boundary_;
};

/// A fan refinement source -> target, with the discrepancy of each inserted
/// ray relative to the target (boundary-free).
struct ResolutionMap {
  ToricSurface source;
  ToricSurface target;
  std::vector<LatticePoint> inserted_rays;
  std::vector<Rat> discrepancies;  // aligned with inserted_rays

  std::optional<Rat> discrepancy_of(const LatticePoint& ray) const;
};

/// Star subdivision at the primitive sum of the cone's two rays.
std::pair<ToricSurface, ResolutionMap> blow_up(const ToricSurface& X, int cone_index);

/// Hirzebruch-Jung subdivision of every singular cone. No inserted ray has
/// self-intersection -1 and all inserted discrepancies lie in (-1, 0].
ResolutionMap minimal_resolution(const ToricSurface& Y);

struct DiscrepancyResult {
  Rat value;
  /// False when an adjacent boundary coefficient is >= 1; the pair may then
  /// fail to be Kawamata log terminal and the value is reported as-is.
  bool klt_reliable{true};
};

/// Discrepancy of the inserted ray over the pair (target, boundary).
DiscrepancyResult pair_discrepancy(const ResolutionMap& resolution, const TorusDivisor& boundary,
                                   const LatticePoint& inserted_ray);

/// Evaluates the support function of `on_target` on the rays of `source`,
/// which must refine the target fan (ray superset).
TorusDivisor pullback(const ToricSurface& source, const TorusDivisor& on_target);

/// Kawamata log terminal test through the minimal resolution: all boundary
/// coefficients below 1 and every inserted discrepancy above -1.
bool klt_via_resolution(const ToricSurface& Y, const TorusDivisor& boundary);

}  // namespace effgen
