#include <effgen/linalg.hpp>

#include <stdexcept>

namespace effgen {

SolveResult solve_exact(const RatMatrix& M, const RatVector& b) {
  const std::size_t rows = M.size();
  if (rows != b.size()) throw std::invalid_argument("matrix/vector size mismatch");
  const std::size_t cols = rows == 0 ? 0 : M[0].size();
  for (const auto& row : M)
    if (row.size() != cols) throw std::invalid_argument("ragged matrix");

  // Augmented row reduction.
  RatMatrix A(rows, RatVector(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) A[i][j] = M[i][j];
    A[i][cols] = b[i];
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && A[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(A[rank], A[pivot]);
    Rat inv = Rat(1) / A[rank][col];
    for (std::size_t j = col; j <= cols; ++j) A[rank][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || A[i][col] == 0) continue;
      Rat f = A[i][col];
      for (std::size_t j = col; j <= cols; ++j) A[i][j] -= f * A[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }

  SolveResult result;
  for (std::size_t i = rank; i < rows; ++i) {
    if (A[i][cols] != 0) {
      result.status = SolveStatus::inconsistent;
      return result;
    }
  }
  result.status = rank == cols ? SolveStatus::unique : SolveStatus::underdetermined;
  result.solution.assign(cols, Rat(0));  // free variables pinned to zero
  for (std::size_t i = 0; i < rank; ++i) result.solution[pivot_col[i]] = A[i][cols];
  return result;
}

Rat determinant(const RatMatrix& M) {
  const std::size_t n = M.size();
  for (const auto& row : M)
    if (row.size() != n) throw std::invalid_argument("determinant of non-square matrix");
  RatMatrix A = M;
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && A[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rat(0);
    if (pivot != col) {
      std::swap(A[pivot], A[col]);
      det = -det;
    }
    det *= A[col][col];
    Rat inv = Rat(1) / A[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      if (A[i][col] == 0) continue;
      Rat f = A[i][col] * inv;
      for (std::size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
    }
  }
  return det;
}

bool is_negative_definite(const RatMatrix& G) {
  const std::size_t n = G.size();
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix minor(k, RatVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = G[i][j];
    Rat d = determinant(minor);
    if (k % 2 == 1 ? d >= 0 : d <= 0) return false;
  }
  return true;
}

}  // namespace effgen
