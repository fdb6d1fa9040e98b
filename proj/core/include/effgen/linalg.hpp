#pragma once

#include <effgen/rational.hpp>

#include <vector>

namespace effgen {

using RatMatrix = std::vector<std::vector<Rat>>;
using RatVector = std::vector<Rat>;

enum class SolveStatus { unique, inconsistent, underdetermined };

struct SolveResult {
  SolveStatus status{SolveStatus::inconsistent};
  RatVector solution;  // one exact solution unless inconsistent

  bool has_solution() const { return status != SolveStatus::inconsistent; }
};

/// Exact Gauss-Jordan elimination over the rationals. Singular-but-consistent
/// systems return one solution with the kernel flagged as `underdetermined`.
SolveResult solve_exact(const RatMatrix& M, const RatVector& b);

/// Leading-principal-minor test: (-1)^k det(G_k) > 0 for all k.
bool is_negative_definite(const RatMatrix& G);

Rat determinant(const RatMatrix& M);

}  // namespace effgen
