#include <effgen/toric_surface.hpp>

#include <algorithm>
#include <stdexcept>

namespace effgen {

namespace {

// 0 for the closed upper half (including the positive x-axis), 1 below.
int angular_half(const LatticePoint& v) {
  return (v.y > 0 || (v.y == 0 && v.x > 0)) ? 0 : 1;
}

bool ccw_less(const LatticePoint& a, const LatticePoint& b) {
  int ha = angular_half(a), hb = angular_half(b);
  if (ha != hb) return ha < hb;
  return det2(a, b) > 0;
}

// Extended gcd over Int: returns g and coefficients with a*s + b*t = g.
Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  Int old_r = a, r = b;
  Int old_s = 1, s_ = 0;
  Int old_t = 0, t_ = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s_;
    old_s = s_;
    s_ = tmp;
    tmp = old_t - q * t_;
    old_t = t_;
    t_ = tmp;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

// Some lattice vector x with det2(a, x) = 1, for primitive a.
LatticePoint unit_det_partner(const LatticePoint& a) {
  // det2(a, x) = a.x * x.y - a.y * x.x = 1
  Int s, t;
  Int g = ext_gcd(a.x, a.y, s, t);
  if (abs(g) != 1) throw std::logic_error("unit_det_partner of imprimitive vector");
  // a.x*s + a.y*t = g; scale so the combination equals exactly 1.
  if (g < 0) {
    s = -s;
    t = -t;
  }
  return {-t, s};
}

// Linear functional m with <m, v_i> = phi_i, <m, v_j> = phi_j.
RatPoint solve_support(const LatticePoint& vi, const LatticePoint& vj, const Rat& phi_i,
                       const Rat& phi_j) {
  Int det = det2(vi, vj);
  if (det == 0) throw std::logic_error("degenerate cone in support-function solve");
  return {(phi_i * vj.y - Rat(vi.y) * phi_j) / det, (Rat(vi.x) * phi_j - phi_i * vj.x) / det};
}

Rat eval(const RatPoint& m, const LatticePoint& v) { return m.x * v.x + m.y * v.y; }

}  // namespace

ToricSurface ToricSurface::from_rays(std::vector<LatticePoint> rays) {
  if (rays.size() < 3)
    throw std::invalid_argument("a complete fan needs at least 3 rays");
  for (auto& v : rays) v = primitive(v);
  std::sort(rays.begin(), rays.end(), ccw_less);
  for (std::size_t i = 0; i + 1 < rays.size(); ++i)
    if (rays[i] == rays[i + 1])
      throw std::invalid_argument("duplicate ray directions");
  const std::size_t n = rays.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (det2(rays[i], rays[(i + 1) % n]) <= 0)
      throw std::invalid_argument(
          "fan is not complete: consecutive rays fail to span a strictly convex cone");
  }
  ToricSurface X;
  X.data_ = std::make_shared<Data>(Data{std::move(rays)});
  return X;
}

int ToricSurface::ray_count() const { return static_cast<int>(data_->rays.size()); }

const std::vector<LatticePoint>& ToricSurface::rays() const { return data_->rays; }

const LatticePoint& ToricSurface::ray(int i) const { return data_->rays.at(i); }

std::optional<int> ToricSurface::ray_index(const LatticePoint& v) const {
  for (int i = 0; i < ray_count(); ++i)
    if (data_->rays[i] == v) return i;
  return std::nullopt;
}

Int ToricSurface::cone_det(int i) const {
  const int n = ray_count();
  return det2(ray(i % n), ray((i + 1) % n));
}

bool ToricSurface::is_smooth() const {
  for (int i = 0; i < ray_count(); ++i)
    if (cone_det(i) != 1) return false;
  return true;
}

int ToricSurface::picard_number() const { return ray_count() - 2; }

int ToricSurface::cone_containing(const LatticePoint& direction) const {
  if (direction.x == 0 && direction.y == 0)
    throw std::invalid_argument("zero direction");
  const int n = ray_count();
  for (int i = 0; i < n; ++i) {
    if (det2(ray(i), direction) >= 0 && det2(direction, ray((i + 1) % n)) >= 0) return i;
  }
  throw std::logic_error("complete fan has no cone containing direction");
}

Rat ToricSurface::curve_self_intersection(int i) const {
  const int n = ray_count();
  const LatticePoint& prev = ray((i + n - 1) % n);
  const LatticePoint& next = ray((i + 1) % n);
  // Determined by pairing the relation sum <m, v_rho> D_rho ~ 0 with D_i.
  return Rat(-det2(prev, next)) / (det2(prev, ray(i)) * det2(ray(i), next));
}

Rat ToricSurface::curve_pair_intersection(int i, int j) const {
  const int n = ray_count();
  i %= n;
  j %= n;
  if (i == j) return curve_self_intersection(i);
  if ((i + 1) % n == j) return Rat(1) / cone_det(i);
  if ((j + 1) % n == i) return Rat(1) / cone_det(j);
  return Rat(0);
}

bool operator==(const ToricSurface& a, const ToricSurface& b) {
  return a.data_ == b.data_ || a.data_->rays == b.data_->rays;
}

TorusDivisor::TorusDivisor(ToricSurface surface, std::vector<Rat> coeffs)
    : surface_(std::move(surface)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != surface_.ray_count())
    throw std::invalid_argument("divisor must have one coefficient per ray");
}

TorusDivisor TorusDivisor::zero(const ToricSurface& surface) {
  return TorusDivisor(surface, std::vector<Rat>(surface.ray_count(), Rat(0)));
}

TorusDivisor TorusDivisor::ray_divisor(const ToricSurface& surface, int ray_index) {
  std::vector<Rat> c(surface.ray_count(), Rat(0));
  c.at(ray_index) = 1;
  return TorusDivisor(surface, std::move(c));
}

Rat TorusDivisor::coeff(const LatticePoint& ray) const {
  auto i = surface_.ray_index(ray);
  if (!i) throw std::invalid_argument("ray does not belong to the surface");
  return coeffs_[*i];
}

bool TorusDivisor::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
}

bool TorusDivisor::is_effective() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c >= 0; });
}

bool TorusDivisor::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return is_integer(c); });
}

std::vector<LatticePoint> TorusDivisor::support() const {
  std::vector<LatticePoint> out;
  for (int i = 0; i < surface_.ray_count(); ++i)
    if (coeffs_[i] != 0) out.push_back(surface_.ray(i));
  return out;
}

TorusDivisor& TorusDivisor::operator+=(const TorusDivisor& other) {
  if (!(surface_ == other.surface_))
    throw std::invalid_argument("divisors live on different surfaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

TorusDivisor& TorusDivisor::operator-=(const TorusDivisor& other) {
  if (!(surface_ == other.surface_))
    throw std::invalid_argument("divisors live on different surfaces");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

TorusDivisor& TorusDivisor::operator*=(const Rat& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

bool operator==(const TorusDivisor& a, const TorusDivisor& b) {
  return a.surface_ == b.surface_ && a.coeffs_ == b.coeffs_;
}

TorusDivisor canonical_divisor(const ToricSurface& X) {
  return TorusDivisor(X, std::vector<Rat>(X.ray_count(), Rat(-1)));
}

Rat divisor_curve_degree(const TorusDivisor& D, int j) {
  const ToricSurface& X = D.surface();
  const int n = X.ray_count();
  j %= n;
  int prev = (j + n - 1) % n, next = (j + 1) % n;
  return D.coeff(prev) * X.curve_pair_intersection(prev, j) +
         D.coeff(j) * X.curve_self_intersection(j) +
         D.coeff(next) * X.curve_pair_intersection(j, next);
}

Rat divisor_pairing(const TorusDivisor& A, const TorusDivisor& B) {
  if (!(A.surface() == B.surface()))
    throw std::invalid_argument("divisors live on different surfaces");
  Rat out = 0;
  for (int i = 0; i < A.surface().ray_count(); ++i)
    out += A.coeff(i) * divisor_curve_degree(B, i);
  return out;
}

bool is_nef(const TorusDivisor& D) {
  for (int i = 0; i < D.surface().ray_count(); ++i)
    if (divisor_curve_degree(D, i) < 0) return false;
  return true;
}

RationalPolygon section_polytope(const TorusDivisor& D) {
  std::vector<Halfspace> hs;
  const ToricSurface& X = D.surface();
  for (int i = 0; i < X.ray_count(); ++i)
    hs.push_back({X.ray(i).x, X.ray(i).y, D.coeff(i)});
  return RationalPolygon::from_halfspaces(std::move(hs));
}

bool is_big(const TorusDivisor& D) {
  RationalPolygon P = section_polytope(D);
  return !P.is_empty() && P.dimension() == 2;
}

bool is_pseudoeffective(const TorusDivisor& D) {
  // The class is a non-negative combination of effective invariant classes
  // exactly when some invariant translate is effective, i.e. the section
  // polytope is non-empty. Decided by exact linear feasibility.
  return !section_polytope(D).is_empty();
}

bool is_fibration_case(const TorusDivisor& D) { return is_nef(D) && !is_big(D); }

PairData::PairData(ToricSurface surface, TorusDivisor boundary)
    : surface_(std::move(surface)), boundary_(std::move(boundary)) {
  if (!(boundary_.surface() == surface_))
    throw std::invalid_argument("boundary lives on a different surface");
  for (const Rat& c : boundary_.coeffs())
    if (c < 0 || c >= 1)
      throw std::invalid_argument("boundary coefficients must lie in [0,1)");
}

bool PairData::klt_certified() const { return surface_.is_smooth(); }

std::optional<Rat> ResolutionMap::discrepancy_of(const LatticePoint& ray) const {
  for (std::size_t i = 0; i < inserted_rays.size(); ++i)
    if (inserted_rays[i] == ray) return discrepancies[i];
  return std::nullopt;
}

namespace {

// Discrepancy of the ray w lying in the cone (v_i, v_{i+1}) of the target,
// over the pair (target, boundary). The support function of K+B takes the
// value 1 - b on each ray.
Rat discrepancy_in_cone(const ToricSurface& target, const TorusDivisor& boundary, int cone,
                        const LatticePoint& w) {
  const int n = target.ray_count();
  const LatticePoint& a = target.ray(cone);
  const LatticePoint& b = target.ray((cone + 1) % n);
  RatPoint m = solve_support(a, b, Rat(1) - boundary.coeff(cone),
                             Rat(1) - boundary.coeff((cone + 1) % n));
  return eval(m, w) - 1;
}

// Lattice points strictly between v1 and v2 on the boundary of the convex
// hull of the nonzero cone points; subdividing at them is the minimal
// resolution of the cone.
std::vector<LatticePoint> hirzebruch_jung_rays(const LatticePoint& v1, const LatticePoint& v2) {
  std::vector<LatticePoint> out;
  LatticePoint a = v1;
  while (det2(a, v2) > 1) {
    LatticePoint x0 = unit_det_partner(a);
    // Smallest t with det(x0 + t*a, v2) >= 0 keeps the point on the hull.
    Rat t = Rat(-det2(x0, v2)) / det2(a, v2);
    Int tmin = rat_ceil(t);
    LatticePoint u{x0.x + tmin * a.x, x0.y + tmin * a.y};
    out.push_back(u);
    a = u;
  }
  return out;
}

}  // namespace

std::pair<ToricSurface, ResolutionMap> blow_up(const ToricSurface& X, int cone_index) {
  const int n = X.ray_count();
  cone_index %= n;
  const LatticePoint& a = X.ray(cone_index);
  const LatticePoint& b = X.ray((cone_index + 1) % n);
  LatticePoint w = primitive(a + b);

  auto rays = X.rays();
  rays.push_back(w);
  ToricSurface Y = ToricSurface::from_rays(std::move(rays));

  ResolutionMap map;
  map.source = Y;
  map.target = X;
  map.inserted_rays = {w};
  map.discrepancies = {discrepancy_in_cone(X, TorusDivisor::zero(X), cone_index, w)};
  return {Y, map};
}

ResolutionMap minimal_resolution(const ToricSurface& Y) {
  const int n = Y.ray_count();
  std::vector<LatticePoint> inserted;
  std::vector<int> home_cone;
  for (int i = 0; i < n; ++i) {
    if (Y.cone_det(i) == 1) continue;
    for (const auto& w : hirzebruch_jung_rays(Y.ray(i), Y.ray((i + 1) % n))) {
      inserted.push_back(w);
      home_cone.push_back(i);
    }
  }

  ResolutionMap map;
  map.target = Y;
  if (inserted.empty()) {
    map.source = Y;
    return map;
  }
  auto rays = Y.rays();
  rays.insert(rays.end(), inserted.begin(), inserted.end());
  map.source = ToricSurface::from_rays(std::move(rays));
  map.inserted_rays = inserted;
  TorusDivisor no_boundary = TorusDivisor::zero(Y);
  for (std::size_t k = 0; k < inserted.size(); ++k)
    map.discrepancies.push_back(discrepancy_in_cone(Y, no_boundary, home_cone[k], inserted[k]));
  return map;
}

DiscrepancyResult pair_discrepancy(const ResolutionMap& resolution, const TorusDivisor& boundary,
                                   const LatticePoint& inserted_ray) {
  if (!(boundary.surface() == resolution.target))
    throw std::invalid_argument("boundary must live on the resolution target");
  if (!resolution.discrepancy_of(inserted_ray))
    throw std::invalid_argument("ray was not inserted by this resolution");
  int cone = resolution.target.cone_containing(inserted_ray);
  DiscrepancyResult out;
  out.value = discrepancy_in_cone(resolution.target, boundary, cone, inserted_ray);
  const int n = resolution.target.ray_count();
  out.klt_reliable = boundary.coeff(cone) < 1 && boundary.coeff((cone + 1) % n) < 1;
  return out;
}

TorusDivisor pullback(const ToricSurface& source, const TorusDivisor& on_target) {
  const ToricSurface& target = on_target.surface();
  for (const auto& v : target.rays())
    if (!source.ray_index(v))
      throw std::invalid_argument("source fan does not refine the target fan");
  std::vector<Rat> coeffs;
  for (const auto& w : source.rays()) {
    int cone = target.cone_containing(w);
    const int n = target.ray_count();
    RatPoint m = solve_support(target.ray(cone), target.ray((cone + 1) % n),
                               -on_target.coeff(cone), -on_target.coeff((cone + 1) % n));
    coeffs.push_back(-eval(m, w));
  }
  return TorusDivisor(source, std::move(coeffs));
}

bool klt_via_resolution(const ToricSurface& Y, const TorusDivisor& boundary) {
  for (const Rat& c : boundary.coeffs())
    if (c >= 1) return false;
  ResolutionMap res = minimal_resolution(Y);
  for (const auto& w : res.inserted_rays)
    if (pair_discrepancy(res, boundary, w).value <= -1) return false;
  return true;
}

}  // namespace effgen
