#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/container/flat_map.hpp>

#include "polyfn/funcspace.hpp"
#include "polyfn/gens.hpp"
#include "polyfn/linsolve.hpp"

namespace polyfn {

enum class Verdict { kPolynomial, kNotPolynomial };

// Where a decision was settled.
enum class Stage {
  kDivisibilityCheck,  // some f(c + p s) - f(c) is not divisible by p
  kSystemInconsistent,  // a class system has no solution
  kResidualMismatch,    // the class solution misses a remaining row
  kAccepted,
};

// How the per-class linear system is checked.
//
// kTwoStage solves the square system on the generating rows s with
// 0 < |s| < n and then verifies every other row against that one solution.
// The rows (p s)^e are integer combinations of the Newton rows
// prod_i C(s_i, a_i) and the generating rows are unitriangular in them, so
// every row is a fixed combination of the generating rows; the residual of a
// row therefore does not depend on which square solution was picked and the
// check is exact. Cost is O(q^m * C) per function.
//
// kFullSystem runs local elimination on all (q/p)^m - 1 rows at once. It is
// the slow reference path used for cross-checking.
enum class Strategy { kTwoStage, kFullSystem };

using WitnessKey = std::pair<DegreeTuple, ShiftTuple>;

// Coefficients alpha_{k,j} with f = sum alpha_{k,j} * (u_k shifted by j).
// Only nonzero coefficients are stored.
struct Witness {
  boost::container::flat_map<WitnessKey, Residue> coefficients;

  Witness plus(const Witness& other, const RingCtx& ctx) const;
  friend bool operator==(const Witness&, const Witness&) = default;
};

// sum alpha_{k,j} * generator_table(k, j), built from the defining case
// split rather than from polynomials.
FuncTable witness_table(const RingCtx& ctx, std::uint32_t arity, const Witness& witness);

struct StageTimings {
  double split_ns = 0;
  double divisibility_ns = 0;
  double solve_ns = 0;
  double residual_ns = 0;
};

// Intermediate state of one residue class, recorded on request.
struct ClassTrace {
  std::vector<std::uint32_t> class_index;
  std::vector<Residue> view;     // f(c + p s), s lexicographic
  std::vector<Residue> reduced;  // view minus f(c)
  std::optional<LocalSystem> system;
  std::optional<SolveOutcome> outcome;
};

struct Comparison {
  Strategy strategy;  // the strategy that was run alongside
  Verdict verdict;
  Stage stage;
  bool agree;
};

struct Decision {
  Verdict verdict = Verdict::kNotPolynomial;
  Stage stage = Stage::kDivisibilityCheck;
  std::optional<Witness> witness;
  // Flat argument index of the first failing entry on rejection.
  std::optional<std::size_t> counterexample;
  StageTimings timings;
  std::vector<ClassTrace> trace;
  std::optional<Comparison> comparison;

  bool accepted() const { return verdict == Verdict::kPolynomial; }
};

struct DecideOptions {
  Strategy strategy = Strategy::kTwoStage;
  // Also run the other strategy and report agreement.
  bool cross_check = false;
  bool record_trace = false;
  // Re-derive f from the witness on every class before accepting.
  bool verify_witness = true;
  // Fill Decision::timings; each stage costs two clock reads.
  bool record_timings = true;
};

Decision decide_univariate(const FuncTable& f, const DecideOptions& options = {});
Decision decide_multivariate(const FuncTable& f, const DecideOptions& options = {});

// Exhaustive check of f(x + s p) == sum_i (s p)^i phi_i(x) over all x, s.
// Needs exactly n univariate tables over f's ring.
bool carlitz_verify(const FuncTable& f, std::span<const FuncTable> phis);

// Phi_0..Phi_{n-1} for a univariate witness, assembled from the per
// generator certificates Phi_i(x) = C(k, i) (x + j)^{k-i} on p | x + j.
std::vector<FuncTable> carlitz_certificate(const RingCtx& ctx, const Witness& witness);

const char* to_string(Verdict verdict);
const char* to_string(Stage stage);
const char* to_string(Strategy strategy);

}  // namespace polyfn
