#include "polyfn/decide.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

namespace polyfn {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point since) {
  return std::chrono::duration<double, std::nano>(Clock::now() - since).count();
}

// Small binomial table C(a, b) mod q for a, b < n.
std::vector<std::vector<Residue>> pascal(const RingCtx& ctx) {
  std::vector<std::vector<Residue>> c(ctx.n(), std::vector<Residue>(ctx.n(), 0));
  for (std::uint32_t a = 0; a < ctx.n(); ++a) {
    c[a][0] = 1 % ctx.q();
    for (std::uint32_t b = 1; b <= a; ++b) c[a][b] = ctx.add(c[a - 1][b - 1], c[a - 1][b]);
  }
  return c;
}

std::size_t flatten(const DegreeTuple& digits, std::size_t len) {
  std::size_t s = 0;
  for (std::uint32_t d : digits) s = s * len + d;
  return s;
}

// Advances base-`len` digits (most significant first) by one.
void step(std::vector<std::size_t>& digits, std::size_t len) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < len) return;
    digits[i] = 0;
  }
}

// Everything about the class-local systems that depends on (p, n, m) and
// the strategy but not on f.
struct ClassPlan {
  std::vector<DegreeTuple> degrees;  // zero tuple first
  std::vector<std::size_t> rows;     // flat class-local s of each equation
  std::vector<Residue> matrix;       // rows x (degrees - 1), entries (p s)^e
  std::optional<LocalFactorization> lu;
  std::vector<std::size_t> lex_order;  // degree indices sorted lexicographically
  std::vector<Residue> lift;    // n x n, C(k, e) p^(k - e)
  std::vector<Residue> powers;  // len x n, (p s)^e; only for m > 1
};

std::shared_ptr<const ClassPlan> make_plan(const RingCtx& ctx, std::uint32_t m, Strategy strategy) {
  auto plan = std::make_shared<ClassPlan>();
  const std::uint32_t n = ctx.n();
  const std::size_t len = ctx.q() / ctx.p();
  plan->degrees = degree_tuples(n, m);
  const std::size_t unknowns = plan->degrees.size() - 1;
  plan->lex_order.resize(plan->degrees.size());
  std::iota(plan->lex_order.begin(), plan->lex_order.end(), 0);
  std::sort(plan->lex_order.begin(), plan->lex_order.end(),
            [&](std::size_t a, std::size_t b) { return plan->degrees[a] < plan->degrees[b]; });

  const auto binom = pascal(ctx);
  plan->lift.assign(std::size_t{n} * n, 0);
  for (std::uint32_t k = 0; k < n; ++k) {
    for (std::uint32_t e = 0; e <= k; ++e) {
      plan->lift[k * n + e] = ctx.mul(binom[k][e], ctx.p_power(k - e));
    }
  }
  if (m > 1) {
    plan->powers.resize(len * n);
    for (std::size_t s = 0; s < len; ++s) {
      const Residue ps = static_cast<Residue>(std::uint64_t{ctx.p()} * s % ctx.q());
      for (std::uint32_t e = 0; e < n; ++e) plan->powers[s * n + e] = ctx.pow(ps, e);
    }
  }
  if (unknowns == 0) return plan;

  // Generating rows s with 0 < |s| < n, or every s != 0.
  if (strategy == Strategy::kTwoStage) {
    for (std::size_t g = 1; g < plan->degrees.size(); ++g) {
      plan->rows.push_back(flatten(plan->degrees[g], len));
    }
  } else {
    std::size_t total = 1;
    for (std::uint32_t i = 0; i < m; ++i) total *= len;
    for (std::size_t s = 1; s < total; ++s) plan->rows.push_back(s);
  }
  plan->matrix.resize(plan->rows.size() * unknowns);
  std::vector<std::size_t> digits(m);
  for (std::size_t r = 0; r < plan->rows.size(); ++r) {
    std::size_t rest = plan->rows[r];
    for (std::size_t i = m; i-- > 0;) {
      digits[i] = rest % len;
      rest /= len;
    }
    for (std::size_t e = 0; e < unknowns; ++e) {
      Residue v = 1 % ctx.q();
      for (std::size_t i = 0; i < m; ++i) {
        const Residue ps = static_cast<Residue>(std::uint64_t{ctx.p()} * digits[i] % ctx.q());
        v = ctx.mul(v, ctx.pow(ps, plan->degrees[e + 1][i]));
      }
      plan->matrix[r * unknowns + e] = v;
    }
  }
  plan->lu.emplace(ctx, plan->rows.size(), unknowns, plan->matrix);
  return plan;
}

// Two-stage plans are small and shared across calls; full-system plans grow
// with q^m and are built per call.
std::shared_ptr<const ClassPlan> plan_for(const RingCtx& ctx, std::uint32_t m, Strategy strategy) {
  if (strategy == Strategy::kFullSystem) return make_plan(ctx, m, strategy);
  using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const ClassPlan>> cache;
  const Key key{ctx.p(), ctx.n(), m};
  // Repeated calls on one ring skip the lock.
  thread_local Key last_key{0, 0, 0};
  thread_local std::shared_ptr<const ClassPlan> last_plan;
  if (last_plan && last_key == key) return last_plan;
  last_key = key;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return last_plan = it->second;
  }
  auto plan = make_plan(ctx, m, strategy);
  std::lock_guard lock(mutex);
  return last_plan = cache.emplace(key, std::move(plan)).first->second;
}

// Class-local engine shared by both strategies and all arities. Class c
// holds the arguments c + p s; for m = 1 its flat index is c + p s.
class Engine {
 public:
  Engine(const FuncTable& f, const DecideOptions& options, Strategy strategy)
      : f_(f),
        ctx_(f.ctx()),
        m_(f.arity()),
        len_(ctx_.q() / ctx_.p()),
        options_(options),
        strategy_(strategy),
        plan_(plan_for(ctx_, m_, strategy)),
        dim_(plan_->degrees.size()) {}

  Decision run();

 private:
  std::size_t index(std::size_t c, std::size_t s) const {
    return m_ == 1 ? c + ctx_.p() * s : views_[c].argument_index(s);
  }
  Residue value(std::size_t c, std::size_t s) const { return f_[index(c, s)]; }

  bool divisibility(Decision& d) const;
  bool solve_classes(Decision& d);
  bool residuals(Decision& d);
  bool residual_univariate(std::size_t c, Residue* diff, std::size_t& failing) const;
  bool residual_multivariate(std::size_t c, std::size_t& failing) const;
  Witness build_witness();
  void verify_witness(const Witness& w) const;
  ShiftTuple shift_of(std::size_t c) const;

  const FuncTable& f_;
  const RingCtx& ctx_;
  const std::uint32_t m_;
  const std::size_t len_;
  const DecideOptions& options_;
  const Strategy strategy_;
  const std::shared_ptr<const ClassPlan> plan_;
  const std::size_t dim_;  // number of degree tuples
  std::size_t classes_ = 0;
  std::size_t class_size_ = 0;
  std::vector<ResidueClassView> views_;  // only for m > 1 or tracing
  // beta_[c * dim_ + g] for degree tuple g; beta_[c * dim_] = f(c). Holds
  // alpha after build_witness.
  std::vector<Residue> beta_;
  std::vector<Residue> work_;
};

Decision Engine::run() {
  Decision d;
  const bool timed = options_.record_timings;
  auto t = timed ? Clock::now() : Clock::time_point{};
  auto lap = [&](double& slot) {
    if (!timed) return;
    slot = elapsed_ns(t);
  };
  auto start = [&] {
    if (timed) t = Clock::now();
  };
  if (m_ > 1 || options_.record_trace) views_ = split_classes(f_);
  classes_ = 1;
  class_size_ = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    classes_ *= ctx_.p();
    class_size_ *= len_;
  }
  lap(d.timings.split_ns);

  if (options_.record_trace) {
    for (const ResidueClassView& v : views_) {
      ClassTrace ct;
      ct.class_index = v.class_index();
      ct.view = v.values();
      ct.reduced.resize(ct.view.size());
      for (std::size_t s = 0; s < ct.view.size(); ++s) {
        ct.reduced[s] = ctx_.sub(ct.view[s], ct.view[0]);
      }
      d.trace.push_back(std::move(ct));
    }
  }

  start();
  const bool divisible = divisibility(d);
  lap(d.timings.divisibility_ns);
  if (!divisible) return d;

  start();
  const bool solvable = solve_classes(d);
  lap(d.timings.solve_ns);
  if (!solvable) return d;

  if (strategy_ == Strategy::kTwoStage) {
    start();
    const bool ok = residuals(d);
    lap(d.timings.residual_ns);
    if (!ok) return d;
  }

  Witness w = build_witness();
  if (options_.verify_witness) verify_witness(w);
  d.verdict = Verdict::kPolynomial;
  d.stage = Stage::kAccepted;
  d.witness = std::move(w);
  return d;
}

bool Engine::divisibility(Decision& d) const {
  const Residue p = ctx_.p();
  if (m_ == 1) {
    const Residue* data = f_.values().data();
    const std::size_t q = ctx_.q();
    for (std::size_t c = 0; c < p; ++c) {
      const Residue base = data[c];
      for (std::size_t x = c + p; x < q; x += p) {
        if (!ctx_.divisible(ctx_.sub(data[x], base))) {
          d.stage = Stage::kDivisibilityCheck;
          d.counterexample = x;
          return false;
        }
      }
    }
    return true;
  }
  for (std::size_t c = 0; c < classes_; ++c) {
    const Residue base = value(c, 0);
    for (std::size_t s = 1; s < class_size_; ++s) {
      if (!ctx_.divisible(ctx_.sub(value(c, s), base))) {
        d.stage = Stage::kDivisibilityCheck;
        d.counterexample = index(c, s);
        return false;
      }
    }
  }
  return true;
}

bool Engine::solve_classes(Decision& d) {
  beta_.assign(classes_ * dim_, 0);
  for (std::size_t c = 0; c < classes_; ++c) beta_[c * dim_] = value(c, 0);
  const std::size_t unknowns = dim_ - 1;
  if (unknowns == 0) return true;

  const std::vector<std::size_t>& rows = plan_->rows;
  work_.resize(std::max<std::size_t>(work_.size(), 2 * rows.size() + 2 * unknowns));
  const std::span<Residue> rhs(work_.data(), rows.size());
  const std::span<Residue> x(work_.data() + rows.size(), unknowns);
  const std::span<Residue> scratch(work_.data() + rows.size() + unknowns,
                                   rows.size() + unknowns);
  for (std::size_t c = 0; c < classes_; ++c) {
    const Residue base = value(c, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) rhs[r] = ctx_.sub(value(c, rows[r]), base);
    const std::size_t bad = plan_->lu->solve_into(rhs, x, scratch);
    if (options_.record_trace) {
      LocalSystem system(ctx_, rows.size(), unknowns, plan_->matrix,
                         std::vector<Residue>(rhs.begin(), rhs.end()));
      d.trace[c].outcome = solve_system(system);
      d.trace[c].system = std::move(system);
    }
    if (bad != LocalFactorization::kSolved) {
      d.stage = Stage::kSystemInconsistent;
      d.counterexample = index(c, rows[bad]);
      return false;
    }
    std::copy(x.begin(), x.end(), beta_.begin() + c * dim_ + 1);
  }
  return true;
}

bool Engine::residual_univariate(std::size_t c, Residue* diff, std::size_t& failing) const {
  // P(s) = sum_{e >= 1} beta_e (p s)^e has degree <= n - 1 in s, so it is
  // walked with a forward-difference table instead of evaluated per point.
  const std::uint32_t n = ctx_.n();
  const Residue q = ctx_.q();
  const Residue* beta = beta_.data() + c * dim_;
  for (std::uint32_t s = 0; s < n; ++s) {
    const Residue ps = static_cast<Residue>(std::uint64_t{ctx_.p()} * s % q);
    Residue v = 0;
    for (std::uint32_t e = n; e-- > 1;) v = ctx_.mul(ctx_.add(v, beta[e]), ps);
    diff[s] = v;
  }
  for (std::uint32_t order = 1; order < n; ++order) {
    for (std::uint32_t s = n - 1; s >= order; --s) diff[s] = ctx_.sub(diff[s], diff[s - 1]);
  }
  const Residue* data = f_.values().data();
  const std::size_t p = ctx_.p();
  const Residue base = data[c];
  for (std::size_t s = 0, x = c; s < class_size_; ++s, x += p) {
    if (ctx_.sub(data[x], base) != diff[0]) {
      failing = s;
      return false;
    }
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
      const Residue sum = diff[i] + diff[i + 1];
      diff[i] = sum >= q ? sum - q : sum;
    }
  }
  return true;
}

bool Engine::residual_multivariate(std::size_t c, std::size_t& failing) const {
  const std::uint32_t n = ctx_.n();
  const Residue* beta = beta_.data() + c * dim_;
  const Residue base = value(c, 0);
  std::vector<std::size_t> digits(m_, 0);
  for (std::size_t s = 0; s < class_size_; ++s, step(digits, len_)) {
    Residue expect = 0;
    for (std::size_t k = 1; k < dim_; ++k) {
      Residue term = beta[k];
      const DegreeTuple& degree = plan_->degrees[k];
      for (std::size_t i = 0; i < m_ && term != 0; ++i) {
        term = ctx_.mul(term, plan_->powers[digits[i] * n + degree[i]]);
      }
      expect = ctx_.add(expect, term);
    }
    if (ctx_.sub(value(c, s), base) != expect) {
      failing = s;
      return false;
    }
  }
  return true;
}

bool Engine::residuals(Decision& d) {
  if (dim_ == 1) return true;
  work_.resize(std::max<std::size_t>(work_.size(), ctx_.n()));
  Residue* diff = work_.data();
  for (std::size_t c = 0; c < classes_; ++c) {
    std::size_t failing = 0;
    const bool ok =
        m_ == 1 ? residual_univariate(c, diff, failing) : residual_multivariate(c, failing);
    if (!ok) {
      d.stage = Stage::kResidualMismatch;
      d.counterexample = index(c, failing);
      return false;
    }
  }
  return true;
}

ShiftTuple Engine::shift_of(std::size_t c) const {
  ShiftTuple shift(m_);
  const Residue p = ctx_.p();
  if (m_ == 1) {
    shift[0] = static_cast<std::uint32_t>((p - c) % p);
  } else {
    const auto& cls = views_[c].class_index();
    for (std::size_t i = 0; i < m_; ++i) shift[i] = (p - cls[i]) % p;
  }
  return shift;
}

// Class c is the support of the generators shifted by j = -c mod p. On that
// class, u_k shifted by j takes the value prod_i (p s_i + p delta_i)^{k_i}
// with delta_i = [c_i != 0], so the class-local coefficients beta (in powers
// of p s) relate to alpha by a unitriangular binomial transform.
Witness Engine::build_witness() {
  const std::uint32_t n = ctx_.n();
  const Residue p = ctx_.p();
  // beta_ is rewritten into alpha class by class; alpha_e only needs
  // alpha_k for k after e in graded order, which is already converted.
  std::size_t nonzero = 0;
  for (std::size_t c = 0; c < classes_; ++c) {
    Residue* a = beta_.data() + c * dim_;
    // Coordinate i is offset when c_i != 0, i.e. when the shift is nonzero.
    std::uint64_t offset = 0;
    if (m_ == 1) {
      offset = c != 0;
    } else {
      const auto& cls = views_[c].class_index();
      for (std::size_t i = 0; i < m_; ++i) offset |= std::uint64_t{cls[i] != 0} << i;
    }
    const bool offset_any = offset != 0;
    for (std::size_t e = dim_; e-- > 0;) {
      Residue acc = a[e];
      for (std::size_t k = e + 1; offset_any && k < dim_; ++k) {
        if (a[k] == 0) continue;
        Residue coeff = 1 % ctx_.q();
        for (std::size_t i = 0; i < m_ && coeff != 0; ++i) {
          const std::uint32_t ki = plan_->degrees[k][i];
          const std::uint32_t ei = plan_->degrees[e][i];
          if (ki < ei) {
            coeff = 0;
          } else if (ki > ei) {
            coeff = (offset >> i) & 1 ? ctx_.mul(coeff, plan_->lift[ki * n + ei]) : 0;
          }
        }
        acc = ctx_.sub(acc, ctx_.mul(a[k], coeff));
      }
      a[e] = acc;
      if (acc != 0) ++nonzero;
    }
  }

  // Emit keys already in map order: degree lexicographic, then shift
  // lexicographic. Shift j belongs to class (p - j) mod p per coordinate.
  decltype(Witness::coefficients)::sequence_type seq;
  seq.reserve(nonzero);
  auto class_of = [&](std::size_t j) {
    if (m_ == 1) return (p - j) % p;
    std::size_t c = 0, rest = j, scale = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
      c += ((p - rest % p) % p) * scale;
      rest /= p;
      scale *= p;
    }
    return c;
  };
  for (std::size_t g : plan_->lex_order) {
    for (std::size_t j = 0; j < classes_; ++j) {
      const std::size_t c = class_of(j);
      const Residue value = beta_[c * dim_ + g];
      if (value != 0) seq.emplace_back(WitnessKey{plan_->degrees[g], shift_of(c)}, value);
    }
  }
  Witness w;
  w.coefficients.adopt_sequence(boost::container::ordered_unique_range, std::move(seq));
  return w;
}

void Engine::verify_witness(const Witness& w) const {
  std::vector<std::size_t> digits(m_);
  std::vector<std::pair<const DegreeTuple*, Residue>> terms;
  for (std::size_t c = 0; c < classes_; ++c) {
    const ShiftTuple shift = shift_of(c);
    terms.clear();
    for (const DegreeTuple& k : plan_->degrees) {
      auto it = w.coefficients.find(WitnessKey{k, shift});
      if (it != w.coefficients.end()) terms.emplace_back(&k, it->second);
    }
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t s = 0; s < class_size_; ++s, step(digits, len_)) {
      const std::size_t x = index(c, s);
      Residue value = 0;
      for (const auto& [k, alpha] : terms) {
        Residue term = alpha;
        for (std::size_t i = 0; i < m_; ++i) {
          // x_i + j_i = p s_i + c_i + j_i, where c_i + j_i is 0 or p.
          const std::uint64_t ci = m_ == 1 ? c : views_[c].class_index()[i];
          const Residue y = static_cast<Residue>(
              (std::uint64_t{ctx_.p()} * digits[i] + ci + shift[i]) % ctx_.q());
          term = ctx_.mul(term, ctx_.pow(y, (*k)[i]));
        }
        value = ctx_.add(value, term);
      }
      if (value != f_[x]) {
        throw Error("witness does not reproduce the input at index " + std::to_string(x));
      }
    }
  }
}

Decision decide_with(const FuncTable& f, const DecideOptions& options) {
  Decision d = Engine(f, options, options.strategy).run();
  if (options.cross_check) {
    DecideOptions other_opts = options;
    other_opts.record_trace = false;
    const Strategy other = options.strategy == Strategy::kTwoStage ? Strategy::kFullSystem
                                                                   : Strategy::kTwoStage;
    Decision o = Engine(f, other_opts, other).run();
    d.comparison = Comparison{other, o.verdict, o.stage, o.verdict == d.verdict};
  }
  return d;
}

}  // namespace

Witness Witness::plus(const Witness& other, const RingCtx& ctx) const {
  Witness out = *this;
  for (const auto& [key, value] : other.coefficients) {
    Residue& slot = out.coefficients[key];
    slot = ctx.add(slot, value);
    if (slot == 0) out.coefficients.erase(key);
  }
  return out;
}

FuncTable witness_table(const RingCtx& ctx, std::uint32_t arity, const Witness& witness) {
  FuncTable sum = FuncTable::zeros(ctx, arity);
  for (const auto& [key, alpha] : witness.coefficients) {
    if (key.first.size() != arity) throw ArityMismatch("witness key does not match arity");
    sum = sum + generator_table(ctx, key.first, key.second).scaled(alpha);
  }
  return sum;
}

Decision decide_univariate(const FuncTable& f, const DecideOptions& options) {
  if (f.arity() != 1) {
    throw ArityMismatch("decide_univariate needs arity 1, got " + std::to_string(f.arity()));
  }
  return decide_with(f, options);
}

Decision decide_multivariate(const FuncTable& f, const DecideOptions& options) {
  if (f.arity() < 1) throw ArityMismatch("arity must be at least 1");
  return decide_with(f, options);
}

bool carlitz_verify(const FuncTable& f, std::span<const FuncTable> phis) {
  const RingCtx& ctx = f.ctx();
  if (f.arity() != 1) throw ArityMismatch("carlitz_verify needs a univariate function");
  if (phis.size() != ctx.n()) {
    throw ArityMismatch("carlitz_verify needs exactly n = " + std::to_string(ctx.n()) +
                        " certificate functions");
  }
  for (const FuncTable& phi : phis) {
    if (phi.arity() != 1 || !(phi.ctx() == ctx)) {
      throw ArityMismatch("certificate functions must be univariate over the same ring");
    }
  }
  const Residue q = ctx.q();
  for (Residue s = 0; s < q; ++s) {
    const Residue sp = ctx.mul(s, ctx.p());
    for (Residue x = 0; x < q; ++x) {
      Residue rhs = 0;
      Residue power = 1 % q;
      for (const FuncTable& phi : phis) {
        rhs = ctx.add(rhs, ctx.mul(power, phi[x]));
        power = ctx.mul(power, sp);
      }
      if (f[ctx.add(x, sp)] != rhs) return false;
    }
  }
  return true;
}

std::vector<FuncTable> carlitz_certificate(const RingCtx& ctx, const Witness& witness) {
  const auto binom = pascal(ctx);
  std::vector<std::vector<Residue>> phi(ctx.n(), std::vector<Residue>(ctx.q(), 0));
  for (const auto& [key, alpha] : witness.coefficients) {
    if (key.first.size() != 1) throw ArityMismatch("carlitz_certificate needs a univariate witness");
    const std::uint32_t k = key.first[0];
    const Residue j = key.second[0] % ctx.q();
    for (Residue x = 0; x < ctx.q(); ++x) {
      const Residue y = ctx.add(x, j);
      if (y % ctx.p() != 0) continue;
      for (std::uint32_t i = 0; i <= k; ++i) {
        const Residue term = ctx.mul(binom[k][i], ctx.pow(y, k - i));
        phi[i][x] = ctx.add(phi[i][x], ctx.mul(alpha, term));
      }
    }
  }
  std::vector<FuncTable> out;
  for (auto& values : phi) out.emplace_back(ctx, 1, std::move(values));
  return out;
}

const char* to_string(Verdict verdict) {
  return verdict == Verdict::kPolynomial ? "polynomial" : "not_polynomial";
}

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::kDivisibilityCheck:
      return "divisibility_check";
    case Stage::kSystemInconsistent:
      return "system_inconsistent";
    case Stage::kResidualMismatch:
      return "residual_mismatch";
    case Stage::kAccepted:
      return "accepted";
  }
  return "unknown";
}

const char* to_string(Strategy strategy) {
  return strategy == Strategy::kTwoStage ? "two_stage" : "full_system";
}

}  // namespace polyfn
