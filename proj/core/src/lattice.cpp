#include <effgen/lattice.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace effgen {

namespace {

Rat hull_cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain; counterclockwise, collinear points stripped,
// starting at the lexicographically smallest vertex.
std::vector<RatPoint> convex_hull(std::vector<RatPoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  if (n <= 2) return pts;

  std::vector<RatPoint> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && hull_cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && hull_cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

// Integer vector proportional to a rational one, made primitive.
LatticePoint integer_direction(const Rat& dx, const Rat& dy) {
  Int scale = lcm(rat_den(dx), rat_den(dy));
  Rat sx = dx * scale, sy = dy * scale;
  return primitive({rat_num(sx), rat_num(sy)});
}

Rat dot(const Halfspace& h, const RatPoint& p) { return h.nx * p.x + h.ny * p.y; }

// One-dimensional feasibility of { alpha * y >= beta } systems.
bool feasible_1d(const std::vector<std::pair<Int, Rat>>& constraints) {
  bool has_lo = false, has_hi = false;
  Rat lo, hi;
  for (const auto& [alpha, beta] : constraints) {
    if (alpha == 0) {
      if (beta > 0) return false;
    } else if (alpha > 0) {
      Rat bound = beta / alpha;
      if (!has_lo || bound > lo) lo = bound;
      has_lo = true;
    } else {
      Rat bound = beta / alpha;
      if (!has_hi || bound < hi) hi = bound;
      has_hi = true;
    }
  }
  return !(has_lo && has_hi && lo > hi);
}

// Exact Fourier-Motzkin feasibility for nx*x + ny*y >= c systems.
bool fm_feasible(const std::vector<Halfspace>& hs) {
  std::vector<const Halfspace*> lower, upper;
  std::vector<std::pair<Int, Rat>> y_constraints;
  for (const auto& h : hs) {
    Rat c = -h.offset;
    if (h.nx > 0) lower.push_back(&h);
    else if (h.nx < 0) upper.push_back(&h);
    else y_constraints.emplace_back(h.ny, c);
  }
  for (const auto* l : lower) {
    for (const auto* u : upper) {
      // Eliminating x from the pair yields  (nx_l*ny_u - nx_u*ny_l) * y >= nx_l*c_u - nx_u*c_l.
      Int alpha = l->nx * u->ny - u->nx * l->ny;
      Rat beta = l->nx * (-u->offset) - u->nx * (-l->offset);
      y_constraints.emplace_back(alpha, beta);
    }
  }
  return feasible_1d(y_constraints);
}

bool recession_nontrivial(const std::vector<Halfspace>& hs) {
  auto admissible = [&hs](const LatticePoint& u) {
    if (u.x == 0 && u.y == 0) return false;
    for (const auto& h : hs)
      if (h.nx * u.x + h.ny * u.y < 0) return false;
    return true;
  };
  for (const auto& h : hs) {
    if (admissible({-h.ny, h.nx})) return true;
    if (admissible({h.ny, -h.nx})) return true;
  }
  return false;
}

}  // namespace

LatticePoint primitive(const LatticePoint& v) {
  if (v.x == 0 && v.y == 0) throw std::invalid_argument("zero vector has no primitive multiple");
  Int g = gcd(abs(v.x), abs(v.y));
  return {v.x / g, v.y / g};
}

RationalPolygon RationalPolygon::from_halfspaces(std::vector<Halfspace> halfspaces) {
  RationalPolygon P;

  // Canonicalize: primitive normals, one (tightest) constraint per normal.
  std::map<std::pair<Int, Int>, Rat> tight;
  for (auto& h : halfspaces) {
    if (h.nx == 0 && h.ny == 0) throw std::invalid_argument("halfspace with zero normal");
    Int g = gcd(abs(h.nx), abs(h.ny));
    Int nx = h.nx / g, ny = h.ny / g;
    Rat off = h.offset / g;
    auto key = std::make_pair(nx, ny);
    auto it = tight.find(key);
    if (it == tight.end() || off < it->second) tight[key] = off;
  }
  for (const auto& [key, off] : tight)
    P.halfspaces_.push_back({key.first, key.second, off});

  if (P.halfspaces_.empty()) {
    P.empty_ = false;
    P.bounded_ = false;
    return P;
  }
  if (!fm_feasible(P.halfspaces_)) {
    P.empty_ = true;
    P.bounded_ = true;
    return P;
  }
  P.empty_ = false;
  if (recession_nontrivial(P.halfspaces_)) {
    P.bounded_ = false;
    return P;
  }
  P.bounded_ = true;

  // Every extreme point has two independent active constraints.
  std::vector<RatPoint> candidates;
  const auto& hs = P.halfspaces_;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      Int det = hs[i].nx * hs[j].ny - hs[i].ny * hs[j].nx;
      if (det == 0) continue;
      Rat ci = -hs[i].offset, cj = -hs[j].offset;
      RatPoint p{(ci * hs[j].ny - hs[i].ny * cj) / det, (hs[i].nx * cj - ci * hs[j].nx) / det};
      bool inside = true;
      for (const auto& h : hs) {
        if (dot(h, p) < -h.offset) {
          inside = false;
          break;
        }
      }
      if (inside) candidates.push_back(p);
    }
  }
  P.vertices_ = convex_hull(candidates);
  if (P.vertices_.empty())
    throw std::logic_error("bounded feasible region produced no vertex");
  return P;
}

RationalPolygon RationalPolygon::from_points(const std::vector<RatPoint>& points) {
  RationalPolygon P;
  auto hull = convex_hull(points);
  if (hull.empty()) return P;

  P.empty_ = false;
  P.bounded_ = true;
  P.vertices_ = hull;

  if (hull.size() == 1) {
    const RatPoint& p = hull[0];
    P.halfspaces_ = {{1, 0, -p.x}, {-1, 0, p.x}, {0, 1, -p.y}, {0, -1, p.y}};
    return P;
  }
  if (hull.size() == 2) {
    const RatPoint &p = hull[0], &q = hull[1];
    LatticePoint d = integer_direction(q.x - p.x, q.y - p.y);
    LatticePoint n{-d.y, d.x};
    Rat np = n.x * p.x + n.y * p.y;
    Rat dp = d.x * p.x + d.y * p.y;
    Rat dq = d.x * q.x + d.y * q.y;
    P.halfspaces_ = {{n.x, n.y, -np}, {-n.x, -n.y, np}, {d.x, d.y, -dp}, {-d.x, -d.y, dq}};
    return P;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const RatPoint& a = hull[i];
    const RatPoint& b = hull[(i + 1) % hull.size()];
    LatticePoint d = integer_direction(b.x - a.x, b.y - a.y);
    LatticePoint n{-d.y, d.x};  // interior lies to the left of each ccw edge
    Rat na = n.x * a.x + n.y * a.y;
    P.halfspaces_.push_back({n.x, n.y, -na});
  }
  return P;
}

int RationalPolygon::dimension() const {
  if (empty_) return -1;
  if (!bounded_) throw std::invalid_argument("dimension of unbounded region");
  if (vertices_.size() == 1) return 0;
  if (vertices_.size() == 2) return 1;
  return 2;
}

const std::vector<RatPoint>& RationalPolygon::vertices() const {
  if (empty_) throw std::invalid_argument("empty polygon has no vertices");
  if (!bounded_) throw std::invalid_argument("unbounded region");
  return vertices_;
}

bool RationalPolygon::contains(const RatPoint& p) const {
  if (empty_) return false;
  for (const auto& h : halfspaces_)
    if (dot(h, p) < -h.offset) return false;
  return true;
}

bool RationalPolygon::contains(const LatticePoint& p) const {
  return contains(RatPoint{Rat(p.x), Rat(p.y)});
}

RationalPolygon RationalPolygon::dilated(const Rat& factor) const {
  if (factor <= 0) throw std::invalid_argument("dilation factor must be positive");
  RationalPolygon P(*this);
  for (auto& h : P.halfspaces_) h.offset *= factor;
  for (auto& v : P.vertices_) {
    v.x *= factor;
    v.y *= factor;
  }
  return P;
}

RationalPolygon RationalPolygon::translated(const RatPoint& t) const {
  RationalPolygon P(*this);
  for (auto& h : P.halfspaces_) h.offset -= h.nx * t.x + h.ny * t.y;
  for (auto& v : P.vertices_) {
    v.x += t.x;
    v.y += t.y;
  }
  return P;
}

bool operator==(const RationalPolygon& a, const RationalPolygon& b) {
  if (a.empty_ != b.empty_) return false;
  if (a.empty_) return true;
  if (a.bounded_ != b.bounded_) return false;
  if (a.bounded_) return a.vertices_ == b.vertices_;
  auto canon = [](const RationalPolygon& P) {
    auto hs = P.halfspaces_;
    std::sort(hs.begin(), hs.end(), [](const Halfspace& x, const Halfspace& y) {
      return std::tie(x.nx, x.ny, x.offset) < std::tie(y.nx, y.ny, y.offset);
    });
    return hs;
  };
  return canon(a) == canon(b);
}

namespace {

// Integer x-interval of one horizontal row of a bounded polygon.
// Returns false when the row misses the polygon.
bool row_interval(const RationalPolygon& P, const Int& y, Int& lo, Int& hi) {
  bool ok = true;
  for (const auto& h : P.halfspaces()) {
    Rat rhs = -h.offset - h.ny * Rat(y);
    if (h.nx > 0) {
      Int bound = rat_ceil(rhs / h.nx);
      if (bound > lo) lo = bound;
    } else if (h.nx < 0) {
      Int bound = rat_floor(rhs / h.nx);
      if (bound < hi) hi = bound;
    } else if (rhs > 0) {
      ok = false;
      break;
    }
  }
  return ok && lo <= hi;
}

void y_range(const RationalPolygon& P, Int& ylo, Int& yhi, Int& xlo, Int& xhi) {
  const auto& vs = P.vertices();
  Rat ymin = vs[0].y, ymax = vs[0].y, xmin = vs[0].x, xmax = vs[0].x;
  for (const auto& v : vs) {
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
  }
  ylo = rat_ceil(ymin);
  yhi = rat_floor(ymax);
  xlo = rat_ceil(xmin);
  xhi = rat_floor(xmax);
}

}  // namespace

std::set<LatticePoint> lattice_points(const RationalPolygon& P) {
  std::set<LatticePoint> out;
  if (P.is_empty()) return out;
  if (!P.is_bounded()) throw std::invalid_argument("unbounded region");
  Int ylo, yhi, xlo, xhi;
  y_range(P, ylo, yhi, xlo, xhi);
  for (Int y = ylo; y <= yhi; ++y) {
    Int lo = xlo, hi = xhi;
    if (!row_interval(P, y, lo, hi)) continue;
    for (Int x = lo; x <= hi; ++x) out.insert({x, y});
  }
  return out;
}

std::set<LatticePoint> minkowski_point_sum(const std::set<LatticePoint>& A,
                                           const std::set<LatticePoint>& B) {
  std::set<LatticePoint> out;
  for (const auto& a : A)
    for (const auto& b : B) out.insert(a + b);
  return out;
}

std::optional<Int> lattice_min(const RationalPolygon& P, const Int& dx, const Int& dy) {
  if (P.is_empty()) return std::nullopt;
  if (!P.is_bounded()) throw std::invalid_argument("unbounded region");
  Int ylo, yhi, xlo, xhi;
  y_range(P, ylo, yhi, xlo, xhi);
  std::optional<Int> best;
  for (Int y = ylo; y <= yhi; ++y) {
    Int lo = xlo, hi = xhi;
    if (!row_interval(P, y, lo, hi)) continue;
    Int x = dx > 0 ? lo : hi;  // the functional is monotone in x along a row
    Int value = dx * x + dy * y;
    if (!best || value < *best) best = value;
  }
  return best;
}

PointedCone3 PointedCone3::from_generators(std::vector<GradedPoint> generators) {
  PointedCone3 C;
  std::vector<RatPoint> slice_points;
  for (const auto& g : generators) {
    if (g.height < 1)
      throw std::invalid_argument("cone generators must have positive height");
    slice_points.push_back({Rat(g.point.x) / g.height, Rat(g.point.y) / g.height});
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  C.generators_ = std::move(generators);
  C.base_ = RationalPolygon::from_points(slice_points);
  if (!C.base_.is_empty()) {
    for (const auto& v : C.base_.vertices()) {
      Int h = lcm(rat_den(v.x), rat_den(v.y));
      Rat sx = v.x * h, sy = v.y * h;
      LatticePoint p{rat_num(sx), rat_num(sy)};
      Int g = gcd(gcd(abs(p.x), abs(p.y)), h);
      C.extreme_.push_back({h / g, {p.x / g, p.y / g}});
    }
  }
  return C;
}

PointedCone3 PointedCone3::over_polygon(const RationalPolygon& base) {
  PointedCone3 C;
  if (base.is_empty()) return C;
  if (!base.is_bounded()) throw std::invalid_argument("unbounded region");
  std::vector<GradedPoint> gens;
  for (const auto& v : base.vertices()) {
    Int h = lcm(rat_den(v.x), rat_den(v.y));
    Rat sx = v.x * h, sy = v.y * h;
    LatticePoint p{rat_num(sx), rat_num(sy)};
    Int g = gcd(gcd(abs(p.x), abs(p.y)), h);
    gens.push_back({h / g, {p.x / g, p.y / g}});
  }
  return from_generators(std::move(gens));
}

RationalPolygon PointedCone3::slice(const Int& height) const {
  if (height < 1) throw std::invalid_argument("slice height must be positive");
  if (base_.is_empty()) return RationalPolygon{};
  return base_.dilated(Rat(height));
}

bool PointedCone3::contains(const GradedPoint& g) const {
  if (g.height < 0) return false;
  if (g.height == 0) return g.point.x == 0 && g.point.y == 0;
  if (base_.is_empty()) return false;
  for (const auto& h : base_.halfspaces())
    if (h.nx * g.point.x + h.ny * g.point.y < -h.offset * g.height) return false;
  return true;
}

std::vector<GradedPoint> hilbert_basis(const PointedCone3& C) {
  std::vector<GradedPoint> basis;
  if (C.is_trivial()) return basis;

  Int bound = 0;
  for (const auto& e : C.extreme_generators()) bound += e.height;

  for (Int h = 1; h <= bound; ++h) {
    for (const auto& p : lattice_points(C.slice(h))) {
      bool representable = false;
      for (const auto& b : basis) {
        if (b.height >= h) break;  // basis is height-sorted
        if (C.contains({h - b.height, p - b.point})) {
          representable = true;
          break;
        }
      }
      if (!representable) basis.push_back({h, p});
    }
  }
  return basis;
}

bool generates_up_to(const PointedCone3& C, const std::vector<GradedPoint>& generators,
                     const Int& max_height) {
  if (C.is_trivial()) return true;
  std::map<Int, std::set<LatticePoint>> reached;
  for (Int h = 1; h <= max_height; ++h) {
    std::set<LatticePoint> target = lattice_points(C.slice(h));
    std::set<LatticePoint>& level = reached[h];
    for (const auto& p : target) {
      bool hit = false;
      for (const auto& g : generators) {
        if (g.height > h) continue;
        if (g.height == h) {
          if (g.point == p) hit = true;
        } else if (reached[h - g.height].count(p - g.point)) {
          hit = true;
        }
        if (hit) break;
      }
      if (hit) level.insert(p);
    }
    if (level != target) return false;
  }
  return true;
}

}  // namespace effgen
