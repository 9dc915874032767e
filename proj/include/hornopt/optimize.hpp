#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "hornopt/csee.hpp"
#include "hornopt/error.hpp"
#include "hornopt/neighbors.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/rng.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt {

enum class InitKind { RandomPermutation, OccurrenceOrder };

inline std::string_view to_token(InitKind k) { return k == InitKind::RandomPermutation ? "random" : "occurrence"; }

inline InitKind parse_init(std::string_view token) {
  if (token == "random") return InitKind::RandomPermutation;
  if (token == "occurrence") return InitKind::OccurrenceOrder;
  throw InvalidArgument("unknown init '" + std::string(token) + "' (expected random or occurrence)");
}

struct SearchConfig {
  std::size_t iterations = 1000;
  NeighborhoodKind kind = NeighborhoodKind::Swap1;
  std::uint64_t seed = 0;
  double t_initial = 0.0;
  double t_final = 0.01;
  InitKind init = InitKind::RandomPermutation;
  /// Wall-clock budget in seconds; 0 means none.
  double time_limit = 0.0;

  void validate() const {
    if (iterations < 1) throw InvalidArgument("iterations must be at least 1");
    if (!(t_initial >= 0.0) || !std::isfinite(t_initial)) throw InvalidArgument("t_initial must be a finite value >= 0");
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw InvalidArgument("t_final must be a finite value > 0");
    if (t_initial > 0.0 && t_final > t_initial) throw InvalidArgument("t_final must not exceed t_initial");
    if (!(time_limit >= 0.0)) throw InvalidArgument("time limit must be >= 0");
  }
};

struct TracePoint {
  std::size_t iteration = 0;
  std::uint64_t total = 0;
  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunResult {
  Scheme best_scheme;
  OpCount best_ops;
  /// Initial state at iteration 0, then every accepted move.
  std::vector<TracePoint> trace;
  std::size_t accepted = 0;
  std::size_t proposed = 0;
  double wall_seconds = 0.0;

  /// Equality ignoring wall time.
  bool same_outcome(const RunResult& o) const {
    return best_scheme == o.best_scheme && best_ops == o.best_ops && trace == o.trace && accepted == o.accepted &&
           proposed == o.proposed;
  }
};

/// Temperature at iteration k of n under exponential cooling.
inline double temperature(const SearchConfig& cfg, std::size_t k) {
  if (cfg.t_initial <= 0.0) return 0.0;
  const double frac = static_cast<double>(k) / static_cast<double>(cfg.iterations);
  return cfg.t_initial * std::pow(cfg.t_final / cfg.t_initial, frac);
}

inline Scheme random_scheme(std::size_t n, Rng& rng) {
  std::vector<VarIndex> v(n);
  std::iota(v.begin(), v.end(), VarIndex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
  return Scheme(std::move(v));
}

namespace detail {

inline RunResult anneal(const Evaluator& eval, const Scheme& occurrence, const SearchConfig& cfg, bool use_temperature) {
  cfg.validate();
  if (eval.var_count() < 2) throw InvalidArgument("search needs at least two variables");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  Rng rng(cfg.seed);
  Scheme current = cfg.init == InitKind::OccurrenceOrder ? occurrence : random_scheme(eval.var_count(), rng);
  OpCount current_ops = eval(current);

  RunResult r;
  r.best_scheme = current;
  r.best_ops = current_ops;
  r.trace.push_back({0, current_ops.total()});

  std::vector<VarIndex> candidate;
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    if (cfg.time_limit > 0.0 && elapsed() >= cfg.time_limit) break;
    candidate = current.order();
    propose_in_place(candidate, cfg.kind, rng);
    Scheme next(candidate);
    const OpCount next_ops = eval(next);
    ++r.proposed;

    const auto delta = static_cast<double>(next_ops.total()) - static_cast<double>(current_ops.total());
    bool accept = delta <= 0.0;
    if (!accept && use_temperature) {
      const double t = temperature(cfg, k);
      if (t > 0.0) accept = rng.uniform() < std::exp(-delta / t);
    }
    if (!accept) continue;

    current = std::move(next);
    current_ops = next_ops;
    ++r.accepted;
    r.trace.push_back({k + 1, current_ops.total()});
    if (current_ops.total() < r.best_ops.total()) {
      r.best_scheme = current;
      r.best_ops = current_ops;
    }
  }
  r.wall_seconds = elapsed();
  return r;
}

}  // namespace detail

/// Stochastic local search: accepts every non-worsening neighbor.
inline RunResult sls(const Evaluator& eval, const Polynomial& p, const SearchConfig& cfg) {
  return detail::anneal(eval, occurrence_order(p), cfg, false);
}

inline RunResult sls(const Polynomial& p, const SearchConfig& cfg) { return sls(Evaluator(p), p, cfg); }

/// Simulated annealing with Boltzmann acceptance and exponential cooling.
inline RunResult sa(const Evaluator& eval, const Polynomial& p, const SearchConfig& cfg) {
  return detail::anneal(eval, occurrence_order(p), cfg, true);
}

inline RunResult sa(const Polynomial& p, const SearchConfig& cfg) { return sa(Evaluator(p), p, cfg); }

/// Runs `count` independent tasks on up to `jobs` threads (0 = hardware
/// concurrency). Results are indexed by task, independent of scheduling.
template <class Task>
auto run_parallel(std::size_t count, std::size_t jobs, Task task) {
  using Result = decltype(task(std::size_t{0}));
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct PortfolioResult {
  std::vector<SearchConfig> configs;
  std::vector<RunResult> runs;
  std::size_t best_index = 0;

  const RunResult& best() const { return runs.at(best_index); }

  std::vector<std::uint64_t> totals() const {
    std::vector<std::uint64_t> t;
    t.reserve(runs.size());
    for (const auto& r : runs) t.push_back(r.best_ops.total());
    return t;
  }
};

/// Configuration of portfolio run i out of k: the first ceil(k/2) runs use
/// Shift1, the rest MirrorShift, each with its own derived seed.
inline SearchConfig portfolio_config(const SearchConfig& base, std::size_t k, std::size_t i) {
  SearchConfig c = base;
  c.kind = i < (k + 1) / 2 ? NeighborhoodKind::Shift1 : NeighborhoodKind::MirrorShift;
  c.seed = derive_seed(base.seed, i);
  return c;
}

inline PortfolioResult run_portfolio(const Evaluator& eval, const Polynomial& p, std::size_t k,
                                     const SearchConfig& base, std::size_t jobs = 0) {
  if (k < 1) throw InvalidArgument("portfolio size k must be at least 1");
  base.validate();
  const Scheme occ = occurrence_order(p);
  PortfolioResult out;
  for (std::size_t i = 0; i < k; ++i) out.configs.push_back(portfolio_config(base, k, i));
  const bool annealing = base.t_initial > 0.0;
  out.runs = run_parallel(k, jobs, [&](std::size_t i) { return detail::anneal(eval, occ, out.configs[i], annealing); });
  for (std::size_t i = 1; i < k; ++i) {
    if (out.runs[i].best_ops.total() < out.runs[out.best_index].best_ops.total()) out.best_index = i;
  }
  return out;
}

inline PortfolioResult run_portfolio(const Polynomial& p, std::size_t k, const SearchConfig& base, std::size_t jobs = 0) {
  return run_portfolio(Evaluator(p), p, k, base, jobs);
}

inline constexpr std::size_t kBruteForceMaxVars = 8;

/// Exhaustive minimum of cse_ops over all schemes; the lexicographically
/// first optimal scheme wins ties.
inline std::pair<Scheme, OpCount> brute_force(const Evaluator& eval) {
  const std::size_t n = eval.var_count();
  if (n > kBruteForceMaxVars) {
    throw InvalidArgument("brute force supports at most " + std::to_string(kBruteForceMaxVars) + " variables, got " +
                          std::to_string(n));
  }
  std::vector<VarIndex> order = Scheme::identity(n).order();
  Scheme best(order);
  OpCount best_ops = eval(best);
  while (std::next_permutation(order.begin(), order.end())) {
    Scheme s(order);
    const OpCount ops = eval(s);
    if (ops.total() < best_ops.total()) {
      best = std::move(s);
      best_ops = ops;
    }
  }
  return {best, best_ops};
}

inline std::pair<Scheme, OpCount> brute_force(const Polynomial& p) { return brute_force(Evaluator(p)); }

struct SweepRow {
  double t_initial = 0.0;
  double mean_total = 0.0;
  /// mean_total relative to the T_i = 0 mean; below 1 is an improvement.
  double relative = 1.0;
  std::vector<std::uint64_t> totals;
};

/// Runs `runs` annealing searches per initial temperature. Run r uses the
/// same derived seed at every grid point. The reference mean is the T_i = 0
/// row, computed even when 0 is not on the grid.
inline std::vector<SweepRow> sweep_temperature(const Evaluator& eval, const Polynomial& p, const std::vector<double>& grid,
                                               std::size_t runs, const SearchConfig& base, std::size_t jobs = 0) {
  if (grid.empty()) throw InvalidArgument("temperature grid is empty");
  if (runs < 1) throw InvalidArgument("sweep needs at least one run per temperature");
  const Scheme occ = occurrence_order(p);
  std::vector<double> temps = grid;
  const bool has_zero = std::find(temps.begin(), temps.end(), 0.0) != temps.end();
  if (!has_zero) temps.insert(temps.begin(), 0.0);
  for (double t : temps) {
    SearchConfig c = base;
    c.t_initial = t;
    c.validate();
  }

  const std::size_t total = temps.size() * runs;
  const auto values = run_parallel(total, jobs, [&](std::size_t job) {
    SearchConfig c = base;
    c.t_initial = temps[job / runs];
    c.seed = derive_seed(base.seed, job % runs);
    return detail::anneal(eval, occ, c, true).best_ops.total();
  });

  std::vector<SweepRow> rows;
  double zero_mean = 0.0;
  for (std::size_t ti = 0; ti < temps.size(); ++ti) {
    SweepRow row;
    row.t_initial = temps[ti];
    row.totals.assign(values.begin() + static_cast<std::ptrdiff_t>(ti * runs),
                      values.begin() + static_cast<std::ptrdiff_t>((ti + 1) * runs));
    double sum = 0.0;
    for (auto v : row.totals) sum += static_cast<double>(v);
    row.mean_total = sum / static_cast<double>(runs);
    if (temps[ti] == 0.0) zero_mean = row.mean_total;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) row.relative = row.mean_total / zero_mean;
  if (!has_zero) rows.erase(rows.begin());
  return rows;
}

inline std::vector<SweepRow> sweep_temperature(const Polynomial& p, const std::vector<double>& grid, std::size_t runs,
                                               const SearchConfig& base, std::size_t jobs = 0) {
  return sweep_temperature(Evaluator(p), p, grid, runs, base, jobs);
}

}  // namespace hornopt
