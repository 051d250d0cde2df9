#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "polyfn/zring.hpp"

namespace polyfn {

enum class SolveStatus { kSolvable, kInconsistent };

struct PivotStep {
  std::size_t row;  // original row index
  std::size_t col;
  std::uint32_t valuation;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kSolvable;
  // One solution, free variables set to zero. Empty when inconsistent.
  std::vector<Residue> solution;
  std::vector<PivotStep> pivot_trace;
  // Original index of a row that reduced to an unsatisfiable equation.
  std::optional<std::size_t> inconsistent_row;
};

// A linear system A x = b over Z_{p^n}, A stored row-major.
class LocalSystem {
 public:
  LocalSystem(RingCtx ctx, std::size_t rows, std::size_t cols, std::vector<Residue> matrix,
              std::vector<Residue> rhs);

  const RingCtx& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Residue a(std::size_t r, std::size_t c) const { return matrix_[r * cols_ + c]; }
  Residue b(std::size_t r) const { return rhs_[r]; }
  const std::vector<Residue>& matrix() const { return matrix_; }
  const std::vector<Residue>& rhs() const { return rhs_; }

  // True when A x == b holds exactly.
  bool satisfied_by(const std::vector<Residue>& x) const;

 private:
  RingCtx ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> matrix_;
  std::vector<Residue> rhs_;
};

// Local elimination of A alone, reusable for any right-hand side. The row
// and column permutations, the multipliers below each pivot and the
// normalized upper part are kept, so solving costs O(rows * cols) and
// allocates nothing.
class LocalFactorization {
 public:
  static constexpr std::size_t kSolved = std::numeric_limits<std::size_t>::max();

  LocalFactorization(RingCtx ctx, std::size_t rows, std::size_t cols, std::vector<Residue> matrix);

  const RingCtx& ctx() const { return ctx_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return pivots_.size(); }
  const std::vector<PivotStep>& pivot_trace() const { return pivots_; }

  // Writes one solution of A x = b (free variables zero) into `x` and
  // returns kSolved, or returns the original index of an unsatisfiable row.
  // `scratch` needs rows + cols entries.
  std::size_t solve_into(std::span<const Residue> b, std::span<Residue> x,
                         std::span<Residue> scratch) const;

  SolveOutcome solve(std::span<const Residue> b) const;

 private:
  Residue& at(std::size_t r, std::size_t c) { return lu_[r * cols_ + c]; }
  Residue at(std::size_t r, std::size_t c) const { return lu_[r * cols_ + c]; }

  RingCtx ctx_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> lu_;
  std::vector<std::size_t> row_id_;  // position -> original row
  std::vector<std::size_t> col_id_;  // position -> original column
  std::vector<Residue> unit_inv_;    // per pivot
  std::vector<PivotStep> pivots_;
};

// Gaussian elimination over the local ring Z_{p^n}. The pivot at each step
// is an entry of minimal p-adic valuation in the active submatrix (ties go
// to the smallest (row, col)); the system is solvable iff every pivot row's
// reduced right-hand side is divisible by the pivot's power of p and every
// zero row has a zero right-hand side. The returned solution is verified by
// substitution before returning.
SolveOutcome solve_system(const LocalSystem& system);

}  // namespace polyfn
