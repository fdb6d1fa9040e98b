#include <effgen/section_rings.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace effgen {

GenerationCertificate generation_degree(const TorusDivisor& D) {
  RationalPolygon P = section_polytope(D);
  if (P.is_empty())
    throw std::invalid_argument("no multiple of the divisor is effective");

  GenerationCertificate cert;
  cert.divisor = D;
  cert.cone = PointedCone3::over_polygon(P);
  cert.basis = hilbert_basis(cert.cone);
  for (const auto& e : cert.cone.extreme_generators()) cert.horizon_checked += e.height;
  for (const auto& b : cert.basis) cert.generation_degree = std::max(cert.generation_degree, b.height);
  return cert;
}

bool check_generation_certificate(const GenerationCertificate& cert) {
  Int max_height = 0;
  for (const auto& b : cert.basis) {
    if (!cert.cone.contains(b)) return false;
    max_height = std::max(max_height, b.height);
  }
  if (max_height != cert.generation_degree) return false;
  if (cert.generation_degree > cert.horizon_checked) return false;
  if (!generates_up_to(cert.cone, cert.basis, cert.horizon_checked)) return false;
  // Irredundancy: no basis element decomposes over the others.
  for (const auto& b : cert.basis) {
    for (const auto& c : cert.basis) {
      if (c.height >= b.height) continue;
      if (cert.cone.contains({b.height - c.height, b.point - c.point})) return false;
    }
  }
  return true;
}

SurjectivityResult multiplication_surjective(const TorusDivisor& G, const TorusDivisor& L) {
  if (!G.is_integral() || !L.is_integral())
    throw std::invalid_argument("multiplication check needs integral divisors");
  auto a = lattice_points(section_polytope(G));
  auto b = lattice_points(section_polytope(L));
  auto target = lattice_points(section_polytope(G + L));
  auto covered = minkowski_point_sum(a, b);
  for (const auto& p : target) {
    if (!covered.count(p)) return {false, p};
  }
  return {true, std::nullopt};
}

bool is_base_point_free(const TorusDivisor& D) {
  return fix_linear_system(D, 1).is_zero();
}

MultigradedCertificate adjoint_multigraded_generation(const ToricSurface& X,
                                                      const std::vector<TorusDivisor>& divisors,
                                                      const Int& bound,
                                                      std::optional<Int> box_override) {
  if (divisors.empty()) throw std::invalid_argument("no divisors given");
  for (const auto& L : divisors) {
    if (!(L.surface() == X)) throw std::invalid_argument("divisor on a different surface");
    if (!L.is_integral()) throw std::invalid_argument("divisors must be integral");
    if (!is_nef(L)) throw std::invalid_argument("divisors must be nef");
    if (lattice_points(section_polytope(L)).empty() || !is_base_point_free(L))
      throw std::invalid_argument("divisor is not base point free");
  }

  MultigradedCertificate cert;
  cert.divisors = divisors;
  cert.degree_bound = bound;
  cert.box = box_override ? *box_override : 2 * (bound + 1);

  const std::size_t k = divisors.size();
  std::map<std::vector<Int>, std::set<LatticePoint>> point_cache;
  auto points_of = [&](const std::vector<Int>& deg) -> const std::set<LatticePoint>& {
    auto it = point_cache.find(deg);
    if (it != point_cache.end()) return it->second;
    TorusDivisor G = TorusDivisor::zero(X);
    for (std::size_t i = 0; i < k; ++i) G += Rat(deg[i]) * divisors[i];
    return point_cache.emplace(deg, lattice_points(section_polytope(G))).first->second;
  };

  std::vector<Int> deg(k, Int(0));
  while (true) {
    Int top = 0;
    for (const Int& d : deg) top = std::max(top, d);
    if (top > bound) {
      for (std::size_t ell = 0; ell < k; ++ell) {
        if (deg[ell] <= bound) continue;
        std::vector<Int> lower = deg;
        --lower[ell];
        std::vector<Int> unit(k, Int(0));
        unit[ell] = 1;
        const auto& whole = points_of(deg);
        auto covered = minkowski_point_sum(points_of(lower), points_of(unit));
        for (const auto& p : whole) {
          if (!covered.count(p)) {
            cert.witness_failures.push_back({deg, static_cast<int>(ell), p});
            break;
          }
        }
      }
    }
    // next multidegree in the box
    std::size_t pos = 0;
    while (pos < k && deg[pos] == cert.box) {
      deg[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
    ++deg[pos];
  }
  return cert;
}

StableBaseLocusReport stable_base_locus_check(const GenerationCertificate& cert,
                                              std::optional<Int> m_override) {
  StableBaseLocusReport report;
  report.m = m_override ? *m_override : cert.generation_degree;
  if (report.m < cert.generation_degree)
    throw std::invalid_argument("certificate does not cover the requested degree");
  report.q = factorial(report.m);

  const TorusDivisor& D = cert.divisor;
  TorusDivisor fix = fix_linear_system(D, report.q);
  ZariskiDecomp Z = zariski(D);

  report.base_rays = fix.support();
  report.negative_support_rays = Z.negative.support();
  report.supports_match = report.base_rays == report.negative_support_rays;

  report.scaled_fix = Rat(report.q) * Z.negative;
  report.scaled_fix_integral = report.scaled_fix.is_integral();
  report.surface_smooth = D.surface().is_smooth();
  return report;
}

}  // namespace effgen
