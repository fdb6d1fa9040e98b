#pragma once

#include <effgen/rational.hpp>

#include <string>
#include <vector>

namespace effgen {

enum class TraceOp { constant, factorial_of, product, quotient, power, ceil_of, lcm_up_to };

/// One arithmetic step of a derivation. Arguments are either literal
/// rationals or references to earlier steps, so a trace replays without
/// re-deriving anything.
struct TraceStep {
  std::string label;    // what the step establishes
  std::string formula;  // the closed form being evaluated
  TraceOp op{TraceOp::constant};
  std::vector<Rat> literal_args;
  std::vector<int> step_args;  // indices of earlier steps
  Rat value;
};

/// An effective constant together with the replayable derivation chain that
/// produced it.
struct BoundTrace {
  Rat value;
  std::vector<TraceStep> steps;
  std::vector<std::string> flags;
};

/// Recomputes every step from its arguments; the result must equal the
/// recorded values and the final value.
bool replays_consistently(const BoundTrace& trace);
Rat replay_value(const BoundTrace& trace);

/// Base-point-freeness multiple for a nef adjoint Cartier divisor in
/// dimension n: 4 * (n+2)! * (n+1).
BoundTrace kollar_q(const Int& n);

/// Order bound 120 * k^2 / eps^3 for the local fundamental group of a
/// log terminal surface germ with k exceptional curves and minimal
/// log discrepancy eps above -1. Value is the exact rational; the final
/// step records its ceiling.
BoundTrace brieskorn_r(const Int& k, const Rat& epsilon);
Int trace_ceiling(const BoundTrace& trace);

/// Surface generation-degree-4 multiple m(a, p): composes eps = 1/a and
/// k = p through the order bound and the dimension-2 base-point-freeness
/// multiple. The non-big fibration branch has no effective constant and is
/// flagged instead of numbered.
BoundTrace surface_m(const Int& a, const Int& p);

/// lcm(1..2*rho): every local index on the minimal model of a smooth
/// threefold of Picard number rho is at most 2*rho.
BoundTrace cartier_index_bound(const Int& rho);

/// Dimension-3 base-point-freeness multiple composed with the Cartier
/// index bound; depends only on rho.
BoundTrace threefold_q(const Int& rho);

/// 5! * threefold_q(rho) * a: the multiple at which the base locus
/// stabilizes for a degree-5 generated ring.
BoundTrace corollary_m(const Int& rho, const Int& a);

inline const char* kNonEffectiveFlag = "non-effective-branch: nef-but-not-big case carries no explicit constant";

}  // namespace effgen
