#include "polyfn/linsolve.hpp"

#include <numeric>
#include <string>
#include <utility>

namespace polyfn {

LocalSystem::LocalSystem(RingCtx ctx, std::size_t rows, std::size_t cols,
                         std::vector<Residue> matrix, std::vector<Residue> rhs)
    : ctx_(ctx), rows_(rows), cols_(cols), matrix_(std::move(matrix)), rhs_(std::move(rhs)) {
  if (matrix_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix has " + std::to_string(matrix_.size()) +
                            " entries, expected " + std::to_string(rows_ * cols_));
  }
  if (rhs_.size() != rows_) {
    throw DimensionMismatch("right-hand side has " + std::to_string(rhs_.size()) +
                            " entries, expected " + std::to_string(rows_));
  }
  for (Residue& v : matrix_) v %= ctx_.q();
  for (Residue& v : rhs_) v %= ctx_.q();
}

bool LocalSystem::satisfied_by(const std::vector<Residue>& x) const {
  if (x.size() != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    Residue acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = ctx_.add(acc, ctx_.mul(a(r, c), x[c]));
    if (acc != rhs_[r]) return false;
  }
  return true;
}

LocalFactorization::LocalFactorization(RingCtx ctx, std::size_t rows, std::size_t cols,
                                       std::vector<Residue> matrix)
    : ctx_(ctx), rows_(rows), cols_(cols), lu_(std::move(matrix)), row_id_(rows), col_id_(cols) {
  if (lu_.size() != rows_ * cols_) {
    throw DimensionMismatch("matrix has " + std::to_string(lu_.size()) + " entries, expected " +
                            std::to_string(rows_ * cols_));
  }
  for (Residue& v : lu_) v %= ctx_.q();
  std::iota(row_id_.begin(), row_id_.end(), 0);
  std::iota(col_id_.begin(), col_id_.end(), 0);

  for (std::size_t t = 0; t < rows_ && t < cols_; ++t) {
    // Minimal valuation in the active submatrix, ties to smallest original
    // (row, col).
    std::size_t best_r = rows_, best_c = cols_;
    std::uint32_t best_v = ctx_.n();
    for (std::size_t r = t; r < rows_; ++r) {
      for (std::size_t c = t; c < cols_; ++c) {
        const Residue v = at(r, c);
        if (v == 0) continue;
        const std::uint32_t val = ctx_.val_p(v);
        const bool better =
            best_r == rows_ || val < best_v ||
            (val == best_v && (row_id_[r] < row_id_[best_r] ||
                               (row_id_[r] == row_id_[best_r] && col_id_[c] < col_id_[best_c])));
        if (better) {
          best_r = r;
          best_c = c;
          best_v = val;
        }
      }
    }
    if (best_r == rows_) break;
    // Whole rows move, so the multipliers stored left of the diagonal follow
    // their row.
    if (best_r != t) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(at(t, c), at(best_r, c));
      std::swap(row_id_[t], row_id_[best_r]);
    }
    if (best_c != t) {
      for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, t), at(r, best_c));
      std::swap(col_id_[t], col_id_[best_c]);
    }
    pivots_.push_back({row_id_[t], col_id_[t], best_v});

    // Normalize the pivot to p^v.
    const Residue inv = ctx_.inv_unit(ctx_.unit_part(at(t, t)));
    unit_inv_.push_back(inv);
    for (std::size_t c = t; c < cols_; ++c) at(t, c) = ctx_.mul(at(t, c), inv);

    // Every entry below has valuation >= v, so (entry / p^v) is exact.
    const Residue pv = at(t, t);
    for (std::size_t r = t + 1; r < rows_; ++r) {
      const Residue entry = at(r, t);
      if (entry == 0) continue;
      const Residue factor = entry / pv;
      for (std::size_t c = t + 1; c < cols_; ++c) {
        at(r, c) = ctx_.sub(at(r, c), ctx_.mul(factor, at(t, c)));
      }
      at(r, t) = factor;
    }
  }
}

std::size_t LocalFactorization::solve_into(std::span<const Residue> b, std::span<Residue> x,
                                           std::span<Residue> scratch) const {
  if (b.size() != rows_ || x.size() != cols_ || scratch.size() < rows_ + cols_) {
    throw DimensionMismatch("solve_into buffers do not match a " + std::to_string(rows_) + "x" +
                            std::to_string(cols_) + " system");
  }
  const std::size_t rank = pivots_.size();
  Residue* y = scratch.data();
  Residue* z = y + rows_;
  for (std::size_t r = 0; r < rows_; ++r) y[r] = b[row_id_[r]] % ctx_.q();
  for (std::size_t t = 0; t < rank; ++t) {
    y[t] = ctx_.mul(y[t], unit_inv_[t]);
    if (y[t] == 0) continue;
    for (std::size_t r = t + 1; r < rows_; ++r) {
      const Residue factor = at(r, t);
      if (factor != 0) y[r] = ctx_.sub(y[r], ctx_.mul(factor, y[t]));
    }
  }
  for (std::size_t r = rank; r < rows_; ++r) {
    if (y[r] != 0) return row_id_[r];
  }

  // Back substitution with free variables at zero.
  for (std::size_t c = rank; c < cols_; ++c) z[c] = 0;
  for (std::size_t i = rank; i-- > 0;) {
    Residue rhs = y[i];
    for (std::size_t c = i + 1; c < cols_; ++c) {
      if (z[c] != 0) rhs = ctx_.sub(rhs, ctx_.mul(at(i, c), z[c]));
    }
    if (ctx_.val_p(rhs) < pivots_[i].valuation) return row_id_[i];
    // The pivot is exactly p^v and rhs is divisible by it as an integer.
    z[i] = rhs / at(i, i);
  }
  for (std::size_t c = 0; c < cols_; ++c) x[col_id_[c]] = z[c];
  return kSolved;
}

SolveOutcome LocalFactorization::solve(std::span<const Residue> b) const {
  SolveOutcome out;
  out.pivot_trace = pivots_;
  std::vector<Residue> x(cols_, 0);
  std::vector<Residue> scratch(rows_ + cols_);
  const std::size_t bad = solve_into(b, x, scratch);
  if (bad != kSolved) {
    out.status = SolveStatus::kInconsistent;
    out.inconsistent_row = bad;
    return out;
  }
  out.solution = std::move(x);
  return out;
}

SolveOutcome solve_system(const LocalSystem& system) {
  const LocalFactorization lu(system.ctx(), system.rows(), system.cols(), system.matrix());
  SolveOutcome out = lu.solve(system.rhs());
  if (out.status == SolveStatus::kSolvable && !system.satisfied_by(out.solution)) {
    throw Error("local elimination produced a non-verifying solution");
  }
  return out;
}

}  // namespace polyfn
