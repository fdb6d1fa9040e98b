#pragma once

#include <effgen/toric_surface.hpp>

#include <string>
#include <vector>

namespace effgen {

struct ContractionStep {
  LatticePoint contracted_ray;
  Rat self_intersection;  // at the time of contraction; always < 0
  Rat adjoint_degree;     // (K+B) . C at the time of contraction; always < 0
};

struct PullbackData {
  LatticePoint removed_ray;
  Rat exceptional_coeff;  // coefficient of K+B - f^*(K_Y+B_Y) at the ray
};

/// Removes one ray carrying a curve of negative self-intersection.
/// Throws std::invalid_argument("not contractible") when the curve has
/// non-negative square (removal would break fan convexity).
std::tuple<ToricSurface, TorusDivisor, PullbackData> contract_ray(const ToricSurface& X,
                                                                  const TorusDivisor& boundary,
                                                                  int ray_index);

enum class LTMOutcome { minimal_model, mori_fibration, not_pseudoeffective };

std::string to_string(LTMOutcome o);

struct LTMResult {
  ToricSurface source;
  TorusDivisor source_boundary;
  ToricSurface model;
  TorusDivisor pushed_boundary;
  /// K_X + B - f^*(K_Y + B_Y) on the source; zero unless minimal_model.
  TorusDivisor exceptional;
  std::vector<ContractionStep> steps;
  LTMOutcome outcome{LTMOutcome::not_pseudoeffective};
};

/// Runs the adjoint minimal model program: repeatedly contracts an invariant
/// curve with (K+B).C < 0 and C^2 < 0 (smallest ray index first). When K+B is
/// pseudo-effective this terminates with a nef K+B on the model and the exact
/// exceptional divisor; otherwise the outcome reports the failure mode.
LTMResult run_ltm(const ToricSurface& X, const TorusDivisor& boundary);
LTMResult run_ltm(const PairData& pair);

struct ZariskiDecomp {
  TorusDivisor positive;
  TorusDivisor negative;
  std::vector<int> support;  // ray indices carrying the negative part
};

/// Exact Zariski decomposition of a pseudo-effective divisor: P nef, N >= 0,
/// P.N_i = 0 and the support Gram matrix negative definite. Computed by
/// augmenting the support with every P-negative curve and re-solving the
/// Gram system until P is nef.
ZariskiDecomp zariski(const TorusDivisor& D);

struct ZariskiAxioms {
  bool positive_nef{};
  bool negative_effective{};
  bool orthogonal{};         // P . N_i = 0 for every support curve
  bool gram_negative_definite{};
  bool sums_to_input{};
  bool all() const {
    return positive_nef && negative_effective && orthogonal && gram_negative_definite &&
           sums_to_input;
  }
};

ZariskiAxioms check_zariski_axioms(const ZariskiDecomp& Z, const TorusDivisor& D);

namespace detail {
/// Iteration-order knob used by the uniqueness tests.
ZariskiDecomp zariski_scan(const TorusDivisor& D, bool reverse_scan);
}  // namespace detail

/// Fixed divisor of the linear system |qD|: on each ray the minimum of
/// <u, v_rho> + q d_rho over the lattice points u of the qD polytope.
/// Requires qD integral and |qD| non-empty.
TorusDivisor fix_linear_system(const TorusDivisor& D, const Int& q);

struct AsymptoticFixReport {
  TorusDivisor limit;  // the Zariski negative part
  struct Entry {
    Int q;
    TorusDivisor gap;  // (1/q) Fix|qD| - limit, componentwise >= 0
  };
  std::vector<Entry> entries;  // one per admissible q up to the horizon
  /// Smallest modulus at which the gap is guaranteed to vanish: clears the
  /// denominators of the coefficients and of the section polytope vertices.
  Int index{1};
  bool converged{false};
};

AsymptoticFixReport asymptotic_fix(const TorusDivisor& D, const Int& horizon);

struct Factorization {
  ToricSurface intermediate;  // minimal resolution of the model
  std::vector<LatticePoint> g_contracted;  // source -> intermediate (smooth blow-downs)
  std::vector<LatticePoint> h_contracted;  // intermediate -> model
};

/// Splits a minimal-model run through the minimal resolution of the model.
/// The h part contracts exactly the resolution's inserted rays.
Factorization factor_through_minimal_resolution(const LTMResult& ltm);

}  // namespace effgen
