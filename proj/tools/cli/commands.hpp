#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "polyfn/decide.hpp"
#include "polyfn/polynomial.hpp"

namespace polyfn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitBudget = 3;

// Runs one CLI invocation. `args` excludes the program name. The report goes
// to `out` as JSON; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

// "(k_1,..,k_m,j_1,..,j_m)"
std::string witness_key(const WitnessKey& key);

nlohmann::ordered_json witness_json(const Witness& witness);
nlohmann::ordered_json polynomial_json(const Polynomial& poly);

struct BenchRow {
  std::uint32_t n;
  std::uint64_t q;
  double decide_ns;
  double ns_per_element;
};

struct BenchResult {
  std::uint32_t p;
  std::vector<BenchRow> rows;
  // max / min of ns_per_element over the rows.
  double linearity_spread;
  double oracle_decide_ns;
  double oracle_member_ns;
  double oracle_speedup;
};

// Times decide on random polynomial functions for n in [n_min, n_max] and
// decide against brute-force membership over Z_8.
BenchResult run_bench(std::uint32_t p, std::uint32_t n_min, std::uint32_t n_max,
                      std::uint32_t reps, std::uint64_t seed);

nlohmann::ordered_json bench_json(const BenchResult& result);

}  // namespace polyfn::cli
