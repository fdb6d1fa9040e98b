#pragma once

#include <effgen/mmp.hpp>

#include <random>
#include <vector>

namespace effgen::testing {

// All randomness is integer-valued and seeded; runs are reproducible.
inline Int rand_int(std::mt19937_64& rng, long lo, long hi) {
  return Int(lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)));
}

inline Rat rand_rat(std::mt19937_64& rng, long lo_num, long hi_num, long max_den) {
  Int den = rand_int(rng, 1, max_den);
  return Rat(rand_int(rng, lo_num, hi_num), den);
}

inline RationalPolygon random_polygon(std::mt19937_64& rng, long coord_bound = 20,
                                      long max_den = 2) {
  std::vector<RatPoint> pts;
  Int count = rand_int(rng, 3, 6);
  for (Int i = 0; i < count; ++i)
    pts.push_back({rand_rat(rng, -coord_bound, coord_bound, max_den),
                   rand_rat(rng, -coord_bound, coord_bound, max_den)});
  return RationalPolygon::from_points(pts);
}

inline ToricSurface random_complete_fan(std::mt19937_64& rng, int max_rays = 8) {
  while (true) {
    std::vector<LatticePoint> rays;
    Int count = rand_int(rng, 4, max_rays);
    for (Int i = 0; i < count; ++i) {
      Int x = rand_int(rng, -4, 4), y = rand_int(rng, -4, 4);
      if (x == 0 && y == 0) continue;
      rays.push_back({x, y});
    }
    try {
      return ToricSurface::from_rays(rays);
    } catch (const std::invalid_argument&) {
      continue;  // rejection sampling
    }
  }
}

inline ToricSurface random_smooth_surface(std::mt19937_64& rng, int blow_ups = 4) {
  ToricSurface X = ToricSurface::from_rays({{1, 0}, {0, 1}, {-1, -1}});
  Int steps = rand_int(rng, 0, blow_ups);
  for (Int i = 0; i < steps; ++i) {
    Int cone = rand_int(rng, 0, X.ray_count() - 1);
    X = blow_up(X, static_cast<int>(cone)).first;
  }
  return X;
}

inline TorusDivisor principal_divisor(const ToricSurface& X, const Int& mx, const Int& my) {
  std::vector<Rat> coeffs;
  for (const auto& v : X.rays()) coeffs.push_back(Rat(mx * v.x + my * v.y));
  return TorusDivisor(X, std::move(coeffs));
}

// Pseudo-effective by construction: a non-negative invariant combination
// plus a principal divisor.
inline TorusDivisor random_psef_divisor(std::mt19937_64& rng, const ToricSurface& X) {
  TorusDivisor D = TorusDivisor::zero(X);
  for (int i = 0; i < X.ray_count(); ++i) {
    if (rand_int(rng, 0, 2) == 0) continue;
    D += rand_rat(rng, 0, 3, 2) * TorusDivisor::ray_divisor(X, i);
  }
  D += principal_divisor(X, rand_int(rng, -2, 2), rand_int(rng, -2, 2));
  return D;
}

inline TorusDivisor random_klt_boundary(std::mt19937_64& rng, const ToricSurface& X) {
  std::vector<Rat> coeffs;
  for (int i = 0; i < X.ray_count(); ++i) {
    Int den = rand_int(rng, 2, 4);
    coeffs.push_back(Rat(rand_int(rng, 0, den - 1), den));
  }
  return TorusDivisor(X, std::move(coeffs));
}

}  // namespace effgen::testing
