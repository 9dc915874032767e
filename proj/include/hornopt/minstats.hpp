#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hornopt/csee.hpp"
#include "hornopt/error.hpp"
#include "hornopt/optimize.hpp"
#include "hornopt/rng.hpp"
#include "hornopt/scheme.hpp"

namespace hornopt {

/// Discrete distribution over strictly ascending values.
class Distribution {
 public:
  Distribution(std::vector<double> values, std::vector<double> probs) : values_(std::move(values)), probs_(std::move(probs)) {
    if (values_.empty()) throw InvalidArgument("distribution needs at least one value");
    if (values_.size() != probs_.size()) throw InvalidArgument("values and probabilities differ in length");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
      if (!(probs_[i] >= 0.0)) throw InvalidArgument("probabilities must be nonnegative");
      if (i > 0 && !(values_[i - 1] < values_[i])) throw InvalidArgument("values must be strictly ascending");
      sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidArgument("probabilities must sum to 1");
    // tail_[t] = P(X >= V_t), summed from the top for accuracy near 1.
    tail_.assign(probs_.size() + 1, 0.0);
    for (std::size_t t = probs_.size(); t-- > 0;) tail_[t] = tail_[t + 1] + probs_[t];
  }

  std::size_t size() const noexcept { return values_.size(); }
  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& probs() const noexcept { return probs_; }

  /// P(X <= V_t); t = -1 gives 0 and the last index gives exactly 1.
  double cdf(std::ptrdiff_t t) const {
    if (t < 0) return 0.0;
    if (static_cast<std::size_t>(t) >= size() - 1) return 1.0;
    return 1.0 - tail_[static_cast<std::size_t>(t) + 1];
  }

  /// P(X > V_t) = 1 - cdf(t), without cancellation.
  double survival(std::ptrdiff_t t) const {
    if (t < 0) return 1.0;
    if (static_cast<std::size_t>(t) >= size() - 1) return 0.0;
    return tail_[static_cast<std::size_t>(t) + 1];
  }

  double mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m += values_[i] * probs_[i];
    return m;
  }

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> tail_;
};

/// Distinct sample values with their multiplicities, ascending.
inline std::vector<std::pair<double, std::size_t>> tally(const std::vector<double>& samples) {
  std::map<double, std::size_t> counts;
  for (double s : samples) ++counts[s];
  return {counts.begin(), counts.end()};
}

inline Distribution histogram(const std::vector<double>& samples) {
  if (samples.empty()) throw InvalidArgument("histogram of an empty sample");
  std::vector<double> values;
  std::vector<double> probs;
  const auto n = static_cast<double>(samples.size());
  for (const auto& [v, c] : tally(samples)) {
    values.push_back(v);
    probs.push_back(static_cast<double>(c) / n);
  }
  return Distribution(std::move(values), std::move(probs));
}

/// Probability that the minimum of n draws is below V_t.
inline double phi(const Distribution& d, std::size_t t, unsigned n) {
  if (t > d.size()) throw InvalidArgument("phi index out of range");
  if (n < 1) throw InvalidArgument("phi needs n >= 1");
  return 1.0 - std::pow(d.survival(static_cast<std::ptrdiff_t>(t) - 1), n);
}

/// Distribution of the minimum of n independent draws.
inline Distribution pmf_min(const Distribution& d, unsigned n) {
  if (n < 1) throw InvalidArgument("pmf_min needs n >= 1");
  std::vector<double> probs(d.size());
  for (std::size_t t = 0; t < d.size(); ++t) {
    const auto i = static_cast<std::ptrdiff_t>(t);
    probs[t] = std::pow(d.survival(i - 1), n) - std::pow(d.survival(i), n);
  }
  double sum = 0.0;
  for (double p : probs) sum += p;
  for (double& p : probs) p /= sum;
  return Distribution(d.values(), std::move(probs));
}

/// E[min of k draws] = V_0 + sum_t (V_{t+1} - V_t) (1 - cdf(t))^k.
inline double expected_min(const Distribution& d, unsigned k) {
  if (k < 1) throw InvalidArgument("expected_min needs k >= 1");
  const auto& v = d.values();
  double e = v.front();
  for (std::size_t t = 0; t + 1 < d.size(); ++t) {
    e += (v[t + 1] - v[t]) * std::pow(d.survival(static_cast<std::ptrdiff_t>(t)), k);
  }
  return e;
}

namespace detail {

// c(m, m - j) for j = 0..r: permutations of m elements with m - j cycles,
// i.e. at swap distance j from the identity.
inline std::vector<std::vector<double>> distance_counts(std::size_t n, std::size_t r) {
  std::vector<std::vector<double>> f(r + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t m = 0; m <= n; ++m) f[0][m] = 1.0;
  for (std::size_t j = 1; j <= r; ++j) {
    for (std::size_t m = 1; m <= n; ++m) f[j][m] = f[j][m - 1] + static_cast<double>(m - 1) * f[j - 1][m - 1];
  }
  return f;
}

// Uniform permutation of 0..n-1 at swap distance exactly r from the identity.
inline std::vector<VarIndex> random_at_distance(std::size_t n, std::size_t r, const std::vector<std::vector<double>>& f,
                                                Rng& rng) {
  std::vector<VarIndex> next(n);
  std::size_t j = r;
  // Insert elements 0..n-1 in turn; element m either opens a cycle or is
  // placed after one of the m earlier elements.
  std::vector<std::size_t> choices;
  for (std::size_t m = n; m-- > 0;) {
    // Decide for element m with m earlier elements and distance budget j.
    const double own = f[j][m];
    const double join = j > 0 ? static_cast<double>(m) * f[j - 1][m] : 0.0;
    const bool opens = rng.uniform() * (own + join) < own;
    choices.push_back(opens ? m : static_cast<std::size_t>(rng.below(m)));
    if (!opens) --j;
  }
  std::reverse(choices.begin(), choices.end());
  for (std::size_t m = 0; m < n; ++m) {
    if (choices[m] == m) {
      next[m] = static_cast<VarIndex>(m);
    } else {
      const std::size_t x = choices[m];
      next[m] = next[x];
      next[x] = static_cast<VarIndex>(m);
    }
  }
  return next;
}

inline Scheme permute_positions(const Scheme& s, const std::vector<VarIndex>& sigma) {
  std::vector<VarIndex> v(s.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s[sigma[i]];
  return Scheme(std::move(v));
}

// Every position permutation at swap distance exactly 1..r, by level.
inline std::vector<std::vector<std::vector<VarIndex>>> swap_levels(std::size_t n, std::size_t r) {
  std::vector<std::vector<std::vector<VarIndex>>> levels(r + 1);
  std::set<std::vector<VarIndex>> seen;
  levels[0].push_back(Scheme::identity(n).order());
  seen.insert(levels[0][0]);
  for (std::size_t d = 1; d <= r; ++d) {
    for (const auto& p : levels[d - 1]) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
          auto q = p;
          std::swap(q[i], q[k]);
          if (seen.insert(q).second) levels[d].push_back(std::move(q));
        }
      }
    }
  }
  return levels;
}

}  // namespace detail

struct FlatnessLevel {
  std::size_t radius = 0;
  double fraction = 0.0;
  std::size_t close = 0;
  std::size_t evaluated = 0;
  /// Number of states at exactly this swap distance.
  double population = 0.0;
  bool sampled = false;
};

struct FlatnessReport {
  Scheme state;
  std::uint64_t reference_total = 0;
  double threshold = 0.01;
  std::optional<std::size_t> sample_size;
  std::vector<FlatnessLevel> levels;
};

inline constexpr std::size_t kDefaultFlatnessSample = 500;
inline constexpr double kMaxEnumeratedLevel = 2e6;

/// Fraction of the states at swap distance 1..max_radius from `s` whose
/// objective differs from that of `s` by a relative amount below
/// `threshold`. A level is enumerated when it has at most `sample` states
/// (or `sample` is unset), otherwise `sample` distinct states are drawn
/// uniformly from it.
inline FlatnessReport flatness(const Evaluator& eval, const Scheme& s, std::size_t max_radius, double threshold,
                               std::optional<std::size_t> sample, Rng& rng, std::size_t jobs = 1) {
  const std::size_t n = s.size();
  if (n < 2) throw InvalidArgument("flatness needs at least two variables");
  if (max_radius < 1 || max_radius > 3) throw InvalidArgument("flatness radius must be 1, 2 or 3");
  if (!(threshold > 0.0)) throw InvalidArgument("flatness threshold must be positive");
  if (sample && *sample < 1) throw InvalidArgument("flatness sample size must be positive");
  s.require_permutation_of(eval.var_count());

  FlatnessReport rep;
  rep.state = s;
  rep.threshold = threshold;
  rep.sample_size = sample;
  rep.reference_total = eval(s).total();
  const auto ref = static_cast<double>(rep.reference_total);

  const auto counts = detail::distance_counts(n, max_radius);
  std::optional<std::vector<std::vector<std::vector<VarIndex>>>> levels;

  for (std::size_t r = 1; r <= max_radius; ++r) {
    FlatnessLevel lvl;
    lvl.radius = r;
    lvl.population = counts[r][n];
    if (lvl.population == 0.0) {
      rep.levels.push_back(lvl);
      continue;
    }
    std::vector<std::vector<VarIndex>> picks;
    if (!sample || lvl.population <= static_cast<double>(*sample)) {
      if (lvl.population > kMaxEnumeratedLevel) {
        throw InvalidArgument("radius " + std::to_string(r) + " has too many states to enumerate; give a sample size");
      }
      if (!levels) levels = detail::swap_levels(n, max_radius);
      picks = (*levels)[r];
    } else {
      lvl.sampled = true;
      std::set<std::vector<VarIndex>> chosen;
      while (chosen.size() < *sample) {
        auto sigma = detail::random_at_distance(n, r, counts, rng);
        if (chosen.insert(sigma).second) picks.push_back(std::move(sigma));
      }
    }
    const auto totals = run_parallel(picks.size(), jobs, [&](std::size_t i) {
      return eval(detail::permute_positions(s, picks[i])).total();
    });
    for (auto t : totals) {
      const double rel = std::abs(static_cast<double>(t) - ref) / std::abs(ref);
      if (rel < threshold) ++lvl.close;
    }
    lvl.evaluated = totals.size();
    lvl.fraction = static_cast<double>(lvl.close) / static_cast<double>(lvl.evaluated);
    rep.levels.push_back(lvl);
  }
  return rep;
}

struct RunProfile {
  std::size_t last_accept = 0;
  std::size_t longest_gap = 0;
  std::uint64_t final_total = 0;
  /// No accepted move in the last `window` iterations.
  bool stalled = false;
  /// Final objective more than 5% above the cohort minimum.
  bool stuck = false;
};

struct StuckReport {
  std::vector<RunProfile> runs;
  std::uint64_t cohort_min = 0;
  double stuck_fraction = 0.0;
  double stalled_fraction = 0.0;
};

inline constexpr double kStuckMargin = 0.05;

inline StuckReport stuck_profile(const std::vector<RunResult>& results, std::size_t window) {
  if (window < 1) throw InvalidArgument("stuck window must be positive");
  StuckReport rep;
  if (results.empty()) return rep;
  rep.cohort_min = results.front().best_ops.total();
  for (const auto& r : results) rep.cohort_min = std::min(rep.cohort_min, r.best_ops.total());
  std::size_t stuck = 0;
  std::size_t stalled = 0;
  for (const auto& r : results) {
    RunProfile prof;
    prof.final_total = r.best_ops.total();
    std::size_t prev = 0;
    for (const auto& tp : r.trace) {
      prof.longest_gap = std::max(prof.longest_gap, tp.iteration - prev);
      prev = tp.iteration;
    }
    prof.last_accept = prev;
    prof.longest_gap = std::max(prof.longest_gap, r.proposed - std::min(prev, r.proposed));
    prof.stalled = r.proposed - std::min(prev, r.proposed) >= window;
    prof.stuck = static_cast<double>(prof.final_total) > (1.0 + kStuckMargin) * static_cast<double>(rep.cohort_min);
    stuck += prof.stuck ? 1 : 0;
    stalled += prof.stalled ? 1 : 0;
    rep.runs.push_back(prof);
  }
  rep.stuck_fraction = static_cast<double>(stuck) / static_cast<double>(results.size());
  rep.stalled_fraction = static_cast<double>(stalled) / static_cast<double>(results.size());
  return rep;
}

}  // namespace hornopt
