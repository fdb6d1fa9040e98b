#include <effgen/mmp.hpp>

#include <effgen/linalg.hpp>

#include <algorithm>
#include <stdexcept>

namespace effgen {

std::string to_string(LTMOutcome o) {
  switch (o) {
    case LTMOutcome::minimal_model: return "minimal-model";
    case LTMOutcome::mori_fibration: return "mori-fibration";
    case LTMOutcome::not_pseudoeffective: return "not-pseudoeffective";
  }
  return "?";
}

std::tuple<ToricSurface, TorusDivisor, PullbackData> contract_ray(const ToricSurface& X,
                                                                  const TorusDivisor& boundary,
                                                                  int ray_index) {
  const int n = X.ray_count();
  ray_index %= n;
  if (n <= 3 || X.curve_self_intersection(ray_index) >= 0)
    throw std::invalid_argument("not contractible");

  const LatticePoint removed = X.ray(ray_index);
  std::vector<LatticePoint> rays;
  std::vector<Rat> coeffs;
  for (int i = 0; i < n; ++i) {
    if (i == ray_index) continue;
    rays.push_back(X.ray(i));
    coeffs.push_back(boundary.coeff(i));
  }
  ToricSurface Y = ToricSurface::from_rays(rays);
  // from_rays re-sorts; realign the pushed coefficients with the new order.
  std::vector<Rat> sorted_coeffs(Y.ray_count());
  for (std::size_t i = 0; i < rays.size(); ++i) sorted_coeffs[*Y.ray_index(rays[i])] = coeffs[i];
  TorusDivisor pushed(Y, std::move(sorted_coeffs));

  TorusDivisor adjoint_up = canonical_divisor(X) + boundary;
  TorusDivisor pulled = pullback(X, canonical_divisor(Y) + pushed);
  PullbackData data{removed, adjoint_up.coeff(removed) - pulled.coeff(removed)};
  return {Y, pushed, data};
}

LTMResult run_ltm(const ToricSurface& X, const TorusDivisor& boundary) {
  LTMResult result;
  result.source = X;
  result.source_boundary = boundary;
  result.exceptional = TorusDivisor::zero(X);

  const bool pseff = is_pseudoeffective(canonical_divisor(X) + boundary);

  ToricSurface current = X;
  TorusDivisor current_boundary = boundary;
  while (true) {
    TorusDivisor adjoint = canonical_divisor(current) + current_boundary;
    int pick = -1;
    bool negative_movable = false;
    for (int i = 0; i < current.ray_count(); ++i) {
      if (divisor_curve_degree(adjoint, i) >= 0) continue;
      if (current.curve_self_intersection(i) < 0) {
        pick = i;
        break;
      }
      negative_movable = true;
    }
    if (pick < 0) {
      result.model = current;
      result.pushed_boundary = current_boundary;
      if (!negative_movable) {
        result.outcome = LTMOutcome::minimal_model;
        result.exceptional =
            (canonical_divisor(X) + boundary) - pullback(X, canonical_divisor(current) + current_boundary);
      } else {
        // A movable adjoint-negative class rules out pseudo-effectivity.
        result.outcome =
            pseff ? LTMOutcome::mori_fibration : LTMOutcome::not_pseudoeffective;
      }
      return result;
    }
    ContractionStep step{current.ray(pick), current.curve_self_intersection(pick),
                         divisor_curve_degree(adjoint, pick)};
    auto [next, pushed, pdata] = contract_ray(current, current_boundary, pick);
    result.steps.push_back(step);
    current = next;
    current_boundary = pushed;
  }
}

LTMResult run_ltm(const PairData& pair) { return run_ltm(pair.surface(), pair.boundary()); }

namespace detail {

ZariskiDecomp zariski_scan(const TorusDivisor& D, bool reverse_scan) {
  if (!is_pseudoeffective(D))
    throw std::invalid_argument("divisor is not pseudo-effective");
  const ToricSurface& X = D.surface();
  const int n = X.ray_count();

  std::vector<int> support;
  std::vector<Rat> mult;
  auto in_support = [&support](int i) {
    return std::find(support.begin(), support.end(), i) != support.end();
  };

  TorusDivisor negative = TorusDivisor::zero(X);
  while (true) {
    TorusDivisor positive = D - negative;
    std::vector<int> bad;
    for (int k = 0; k < n; ++k) {
      int i = reverse_scan ? n - 1 - k : k;
      if (!in_support(i) && divisor_curve_degree(positive, i) < 0) bad.push_back(i);
    }
    if (bad.empty()) {
      ZariskiDecomp Z{positive, negative, support};
      std::sort(Z.support.begin(), Z.support.end());
      return Z;
    }
    for (int i : bad) {
      if (X.curve_self_intersection(i) >= 0)
        throw std::logic_error("pseudo-effective divisor met a movable negative curve");
      support.push_back(i);
    }
    // Re-solve the Gram system: N . C_j = D . C_j for every support curve.
    const std::size_t m = support.size();
    RatMatrix gram(m, RatVector(m));
    RatVector rhs(m);
    for (std::size_t a = 0; a < m; ++a) {
      rhs[a] = divisor_curve_degree(D, support[a]);
      for (std::size_t b = 0; b < m; ++b)
        gram[a][b] = X.curve_pair_intersection(support[a], support[b]);
    }
    SolveResult sol = solve_exact(gram, rhs);
    if (sol.status != SolveStatus::unique)
      throw std::logic_error("Zariski Gram system is singular");
    mult = sol.solution;
    std::vector<Rat> coeffs(n, Rat(0));
    for (std::size_t a = 0; a < m; ++a) coeffs[support[a]] = mult[a];
    negative = TorusDivisor(X, std::move(coeffs));
  }
}

}  // namespace detail

ZariskiDecomp zariski(const TorusDivisor& D) { return detail::zariski_scan(D, false); }

ZariskiAxioms check_zariski_axioms(const ZariskiDecomp& Z, const TorusDivisor& D) {
  ZariskiAxioms ax;
  ax.positive_nef = is_nef(Z.positive);
  ax.negative_effective = Z.negative.is_effective();
  ax.sums_to_input = (Z.positive + Z.negative) == D;
  ax.orthogonal = true;
  for (int i : Z.support)
    if (divisor_curve_degree(Z.positive, i) != 0) ax.orthogonal = false;
  const std::size_t m = Z.support.size();
  RatMatrix gram(m, RatVector(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      gram[a][b] = D.surface().curve_pair_intersection(Z.support[a], Z.support[b]);
  ax.gram_negative_definite = is_negative_definite(gram);
  return ax;
}

TorusDivisor fix_linear_system(const TorusDivisor& D, const Int& q) {
  if (q < 1) throw std::invalid_argument("multiple must be positive");
  TorusDivisor qD = Rat(q) * D;
  if (!qD.is_integral()) throw std::invalid_argument("qD is not integral");
  RationalPolygon P = section_polytope(qD);
  const ToricSurface& X = D.surface();
  std::vector<Rat> coeffs;
  for (int i = 0; i < X.ray_count(); ++i) {
    auto min_pairing = lattice_min(P, X.ray(i).x, X.ray(i).y);
    if (!min_pairing) throw std::invalid_argument("|qD| is empty");
    coeffs.push_back(Rat(*min_pairing) + qD.coeff(i));
  }
  return TorusDivisor(X, std::move(coeffs));
}

AsymptoticFixReport asymptotic_fix(const TorusDivisor& D, const Int& horizon) {
  AsymptoticFixReport report;
  ZariskiDecomp Z = zariski(D);
  report.limit = Z.negative;

  Int index = 1;
  for (const Rat& c : D.coeffs()) index = lcm(index, rat_den(c));
  RationalPolygon P = section_polytope(D);
  if (!P.is_empty())
    for (const auto& v : P.vertices()) index = lcm(lcm(index, rat_den(v.x)), rat_den(v.y));
  report.index = index;

  bool divisible_seen = false, divisible_all_zero = true;
  for (Int q = 1; q <= horizon; ++q) {
    TorusDivisor qD = Rat(q) * D;
    if (!qD.is_integral()) continue;
    if (lattice_points(section_polytope(qD)).empty()) continue;
    TorusDivisor gap = Rat(1, q) * fix_linear_system(D, q) - report.limit;
    if (!gap.is_effective())
      throw std::logic_error("fixed part fell below the asymptotic limit");
    bool zero = gap.is_zero();
    if (q % index == 0) {
      divisible_seen = true;
      divisible_all_zero = divisible_all_zero && zero;
    }
    report.entries.push_back({q, gap});
  }
  if (report.entries.empty())
    throw std::invalid_argument("no non-empty multiple up to the horizon");
  report.converged = divisible_seen && divisible_all_zero;
  return report;
}

Factorization factor_through_minimal_resolution(const LTMResult& ltm) {
  if (ltm.outcome != LTMOutcome::minimal_model)
    throw std::invalid_argument("factorization needs a minimal-model outcome");

  ResolutionMap res = minimal_resolution(ltm.model);
  for (const auto& w : res.inserted_rays) {
    if (!ltm.source.ray_index(w))
      throw std::logic_error("resolution ray missing from the source fan");
  }

  Factorization f;
  f.intermediate = res.source;
  f.h_contracted = res.inserted_rays;
  for (const auto& v : ltm.source.rays())
    if (!f.intermediate.ray_index(v)) f.g_contracted.push_back(v);
  return f;
}

}  // namespace effgen
