#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hornopt/csee.hpp"
#include "hornopt/error.hpp"
#include "hornopt/generators.hpp"
#include "hornopt/hornerize.hpp"
#include "hornopt/minstats.hpp"
#include "hornopt/neighbors.hpp"
#include "hornopt/optimize.hpp"
#include "hornopt/polynomial.hpp"
#include "hornopt/scheme.hpp"
#include "hornopt/text.hpp"
#include "report.hpp"

namespace hornopt::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kParse = 2, kInvalidConfig = 3 };

namespace detail {

using nlohmann::json;

struct InputSpec {
  std::string path;
  std::vector<unsigned> res;
  unsigned cap = kDefaultResolventCap;
  bool share_signs = false;
};

struct LoadedInput {
  std::string id;
  Polynomial poly;
};

inline LoadedInput load(const InputSpec& in) {
  const bool has_file = !in.path.empty();
  const bool has_res = !in.res.empty();
  if (has_file == has_res) throw InvalidArgument("give exactly one input: --input FILE or --res M N");
  if (has_res) {
    return {"res(" + std::to_string(in.res[0]) + "," + std::to_string(in.res[1]) + ")",
            gen_resolvent(in.res[0], in.res[1], in.cap)};
  }
  return {std::filesystem::path(in.path).stem().string(), read_polynomial_file(in.path)};
}

inline void add_input(CLI::App* cmd, InputSpec& in) {
  cmd->add_option("--input,-i", in.path, "Polynomial file (.poly)");
  cmd->add_option("--res", in.res, "Generate the resolvent res(M,N) instead of reading a file")->expected(2);
  cmd->add_option("--cap", in.cap, "Largest M+N accepted by --res")->capture_default_str();
  cmd->add_flag("--share-signs", in.share_signs, "Let CSE also share subexpressions that differ only in sign");
}

struct SearchFlags {
  std::size_t iterations = 1000;
  std::string kind;
  std::optional<std::uint64_t> seed;
  double t_initial = 0.0;
  double t_final = 0.01;
  std::string init = "random";
  std::size_t jobs = 0;
  double time_limit = 0.0;

  SearchConfig config(NeighborhoodKind fallback) const {
    SearchConfig c;
    c.iterations = iterations;
    c.kind = kind.empty() ? fallback : parse_kind(kind);
    c.seed = seed ? *seed : std::random_device{}();
    c.t_initial = t_initial;
    c.t_final = t_final;
    c.init = parse_init(init);
    c.time_limit = time_limit;
    c.validate();
    return c;
  }
};

inline void add_search(CLI::App* cmd, SearchFlags& s, bool annealing) {
  cmd->add_option("--n-iters,-N", s.iterations, "Iterations per run")->capture_default_str();
  cmd->add_option("--kind", s.kind, "Neighborhood: 1swap, 2swap, 3swap, 1shift, mirror, manyshift, mirrorshift");
  cmd->add_option("--seed", s.seed, "Master seed (random and reported when omitted)");
  if (annealing) {
    cmd->add_option("--t-initial", s.t_initial, "Initial SA temperature (0 = local search)")->capture_default_str();
    cmd->add_option("--t-final", s.t_final, "Final SA temperature")->capture_default_str();
  }
  cmd->add_option("--init", s.init, "Start state: random or occurrence")->capture_default_str();
  cmd->add_option("--jobs,-j", s.jobs, "Concurrent runs (0 = hardware threads)")->capture_default_str();
  cmd->add_option("--time-limit", s.time_limit, "Wall-clock budget per run in seconds (0 = none)")->capture_default_str();
}

inline std::string check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw InvalidArgument("unsupported --format '" + f + "' for this command");
}

inline std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::vector<std::string> params;
  std::string output;
  unsigned cap = kDefaultResolventCap;
  std::string format = "text";
};

inline int cmd_gen(const GenArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json"});
  Polynomial p;
  if (a.family == "res") {
    if (a.params.size() != 2) throw InvalidArgument("gen res needs M N");
    p = gen_resolvent(static_cast<unsigned>(std::stoul(a.params[0])), static_cast<unsigned>(std::stoul(a.params[1])),
                      a.cap);
  } else if (a.family == "power") {
    if (a.params.size() != 2) throw InvalidArgument("gen power needs FILE K");
    const unsigned long k = std::stoul(a.params[1]);
    if (k < 1) throw InvalidArgument("power must be positive");
    p = expand_power(read_polynomial_file(a.params[0]), static_cast<unsigned>(k));
  } else {
    throw InvalidArgument("unknown generator '" + a.family + "' (expected res or power)");
  }

  if (a.output.empty()) {
    if (a.format == "json") {
      out << json{{"variables", p.var_count()}, {"terms", p.term_count()}, {"polynomial", format_polynomial(p)}}.dump()
          << '\n';
    } else {
      out << format_polynomial(p) << '\n';
    }
    return kOk;
  }
  write_polynomial_file(a.output, p);
  if (a.format == "json") {
    out << json{{"variables", p.var_count()}, {"terms", p.term_count()}, {"output", a.output}}.dump() << '\n';
  } else {
    out << "variables: " << p.var_count() << "\nterms: " << p.term_count() << "\nwritten: " << a.output << '\n';
  }
  return kOk;
}

// --- count -----------------------------------------------------------------

struct CountArgs {
  InputSpec input;
  std::vector<std::string> scheme;
  std::string format = "text";
  bool dump = false;
};

inline int cmd_count(const CountArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json"});
  const LoadedInput in = load(a.input);
  const Polynomial& p = in.poly;
  if (p.is_zero()) throw InvalidArgument("the zero polynomial has no Horner form");
  const Scheme s = a.scheme.empty() ? occurrence_order(p) : Scheme::from_names(p.vars(), a.scheme);
  const bool signs = a.input.share_signs;
  const ExprDag horner = apply_scheme(p, s, signs);
  const ExprDag cse = eliminate_pairs(hash_cons(horner, signs));
  const OpCount naive = count_naive_ops(p);
  const OpCount h = count_dag_ops(horner);
  const OpCount c = count_dag_ops(cse);
  if (a.format == "json") {
    json j{{"expression_id", in.id},
           {"variables", p.var_count()},
           {"terms", p.term_count()},
           {"naive", report::ops_json(naive)},
           {"naive_binary_powers", report::ops_json(count_naive_ops_binary_powers(p))},
           {"scheme", s.names(p.vars())},
           {"horner", report::ops_json(h)},
           {"cse", report::ops_json(c)}};
    if (a.dump) j["dag"] = dump_dag(cse, &p.vars());
    out << j.dump() << '\n';
    return kOk;
  }
  out << "expression: " << in.id << "\nvariables: " << p.var_count() << "\nterms: " << p.term_count() << '\n';
  out << "naive: " << naive.mul << " mul + " << naive.add << " add = " << naive.total() << '\n';
  out << "scheme:";
  for (const auto& n : s.names(p.vars())) out << ' ' << n;
  out << "\nhorner: " << h.mul << " mul + " << h.add << " add = " << h.total() << '\n';
  out << "horner+cse: " << c.mul << " mul + " << c.add << " add = " << c.total() << '\n';
  if (a.dump) out << dump_dag(cse, &p.vars());
  return kOk;
}

// --- optimize --------------------------------------------------------------

struct OptimizeArgs {
  InputSpec input;
  SearchFlags search;
  std::size_t k = 1;
  bool brute = false;
  bool trace = false;
  std::string format = "text";
};

inline int cmd_optimize(const OptimizeArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json"});
  if (a.k < 1) throw InvalidArgument("--k must be at least 1");
  const LoadedInput in = load(a.input);
  const Polynomial& p = in.poly;
  if (p.is_zero()) throw InvalidArgument("the zero polynomial has no Horner form");
  const OpCount naive = count_naive_ops(p);
  const Evaluator eval(p, a.input.share_signs);
  const OpCount occ = eval(occurrence_order(p));

  if (a.brute) {
    const auto [scheme, ops] = brute_force(eval);
    if (a.format == "json") {
      out << json{{"expression_id", in.id},
                  {"naive", report::ops_json(naive)},
                  {"occurrence", report::ops_json(occ)},
                  {"best_total", ops.total()},
                  {"best_mul", ops.mul},
                  {"best_add", ops.add},
                  {"best_scheme", scheme.names(p.vars())}}
                 .dump()
          << '\n';
      return kOk;
    }
    out << "expression: " << in.id << "\nnaive: " << naive.total() << "\noccurrence order: " << occ.total()
        << "\nbrute-force optimum: " << ops.total() << " (" << ops.mul << " mul + " << ops.add << " add)\nscheme:";
    for (const auto& n : scheme.names(p.vars())) out << ' ' << n;
    out << '\n';
    return kOk;
  }

  if (p.var_count() < 2) throw InvalidArgument("search needs at least two variables");
  const SearchConfig base = a.search.config(NeighborhoodKind::Shift1);
  std::vector<SearchConfig> configs;
  std::vector<RunResult> runs;
  if (a.k == 1) {
    configs.push_back(base);
    runs.push_back(base.t_initial > 0.0 ? sa(eval, p, base) : sls(eval, p, base));
  } else {
    PortfolioResult pr = run_portfolio(eval, p, a.k, base, a.search.jobs);
    configs = std::move(pr.configs);
    runs = std::move(pr.runs);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i) {
    if (runs[i].best_ops.total() < runs[best].best_ops.total()) best = i;
  }
  const OpCount& b = runs[best].best_ops;
  const double reduction = static_cast<double>(naive.total()) / static_cast<double>(b.total());

  if (a.format == "json") {
    json records = json::array();
    for (std::size_t i = 0; i < runs.size(); ++i) {
      records.push_back(report::run_json(in.id, configs[i], runs[i], p.vars(), a.trace));
    }
    out << json{{"expression_id", in.id},
                {"seed", base.seed},
                {"naive", report::ops_json(naive)},
                {"occurrence", report::ops_json(occ)},
                {"best_total", b.total()},
                {"reduction", reduction},
                {"runs", std::move(records)}}
               .dump()
        << '\n';
    return kOk;
  }
  out << "expression: " << in.id << "\nseed: " << base.seed << "\nnaive: " << naive.total()
      << "\noccurrence order: " << occ.total() << '\n';
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out << "run " << i << " [" << to_token(configs[i].kind) << "]: " << runs[i].best_ops.total() << " ("
        << runs[i].accepted << " accepted, " << fixed(runs[i].wall_seconds, 2) << " s)\n";
  }
  out << "best: " << b.total() << " (" << b.mul << " mul + " << b.add << " add)\nreduction: " << fixed(reduction, 2)
      << "x\nscheme:";
  for (const auto& n : runs[best].best_scheme.names(p.vars())) out << ' ' << n;
  out << '\n';
  if (a.trace) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (const auto& t : runs[i].trace) out << "trace " << i << ' ' << t.iteration << ' ' << t.total << '\n';
    }
  }
  return kOk;
}

// --- sweep-temp ------------------------------------------------------------

struct SweepArgs {
  InputSpec input;
  SearchFlags search;
  std::vector<double> grid{0.0};
  std::size_t runs = 10;
  std::string format = "csv";
};

inline int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  check_format(a.format, {"csv", "json"});
  const LoadedInput in = load(a.input);
  const SearchConfig base = a.search.config(NeighborhoodKind::Swap1);
  const auto rows = sweep_temperature(Evaluator(in.poly, a.input.share_signs), in.poly, a.grid, a.runs, base, a.search.jobs);
  if (a.format == "json") {
    json js = json::array();
    for (const auto& r : rows) {
      js.push_back({{"t_initial", r.t_initial}, {"mean_total", r.mean_total}, {"relative", r.relative}, {"totals", r.totals}});
    }
    out << json{{"expression_id", in.id},
                {"N", base.iterations},
                {"kind", std::string(to_token(base.kind))},
                {"seed", base.seed},
                {"runs", a.runs},
                {"rows", std::move(js)}}
               .dump()
        << '\n';
    return kOk;
  }
  report::csv_row(out, {"t_initial", "mean_total", "relative", "runs"});
  for (const auto& r : rows) {
    report::csv_row(out, {report::number(r.t_initial), report::number(r.mean_total), report::number(r.relative),
                          std::to_string(r.totals.size())});
  }
  return kOk;
}

// --- neighborhood-study ----------------------------------------------------

struct StudyArgs {
  InputSpec input;
  SearchFlags search;
  std::vector<std::string> kinds;
  std::vector<std::size_t> n_values{100, 500, 1000};
  std::size_t runs = 20;
  unsigned k = 4;
  std::string histograms;
  std::string format = "csv";
};

inline int cmd_study(const StudyArgs& a, std::ostream& out) {
  check_format(a.format, {"csv", "json"});
  if (a.k < 1) throw InvalidArgument("--k must be at least 1");
  if (a.runs < 1) throw InvalidArgument("--runs must be at least 1");
  if (a.n_values.empty()) throw InvalidArgument("--n-values is empty");
  const LoadedInput in = load(a.input);
  const Polynomial& p = in.poly;
  std::vector<NeighborhoodKind> kinds;
  if (a.kinds.empty()) {
    kinds.assign(kAllNeighborhoods.begin(), kAllNeighborhoods.end());
  } else {
    for (const auto& t : a.kinds) kinds.push_back(parse_kind(t));
  }
  const SearchConfig base = a.search.config(NeighborhoodKind::Swap1);
  const Evaluator eval(p, a.input.share_signs);
  const Scheme occ = occurrence_order(p);

  struct Cell {
    NeighborhoodKind kind;
    std::size_t n;
  };
  std::vector<Cell> cells;
  for (auto kind : kinds) {
    for (auto n : a.n_values) cells.push_back({kind, n});
  }
  // Run r of every cell uses the same derived seed, so kinds are compared on
  // common random numbers.
  const auto totals = run_parallel(cells.size() * a.runs, a.search.jobs, [&](std::size_t job) {
    SearchConfig c = base;
    c.kind = cells[job / a.runs].kind;
    c.iterations = cells[job / a.runs].n;
    c.seed = derive_seed(base.seed, job % a.runs);
    return static_cast<double>(::hornopt::detail::anneal(eval, occ, c, false).best_ops.total());
  });

  std::ofstream hist;
  if (!a.histograms.empty()) {
    hist.open(a.histograms);
    if (!hist) throw Error("cannot write '" + a.histograms + "'");
    report::csv_row(hist, {"kind", "N", "value", "count"});
  }
  json rows = json::array();
  if (a.format == "csv") report::csv_row(out, {"N", "kind", "k", "E_min"});
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    std::vector<double> samples(totals.begin() + static_cast<std::ptrdiff_t>(ci * a.runs),
                                totals.begin() + static_cast<std::ptrdiff_t>((ci + 1) * a.runs));
    const double e = expected_min(histogram(samples), a.k);
    const std::string kind(to_token(cells[ci].kind));
    json h = json::array();
    for (const auto& [v, c] : tally(samples)) {
      h.push_back({v, c});
      if (hist) report::csv_row(hist, {kind, std::to_string(cells[ci].n), report::number(v), std::to_string(c)});
    }
    if (a.format == "csv") {
      report::csv_row(out, {std::to_string(cells[ci].n), kind, std::to_string(a.k), report::number(e)});
    } else {
      rows.push_back({{"N", cells[ci].n}, {"kind", kind}, {"k", a.k}, {"E_min", e}, {"histogram", std::move(h)}});
    }
  }
  if (a.format == "json") {
    out << json{{"expression_id", in.id}, {"seed", base.seed}, {"runs", a.runs}, {"rows", std::move(rows)}}.dump()
        << '\n';
  }
  return kOk;
}

// --- flatness --------------------------------------------------------------

struct FlatnessArgs {
  InputSpec input;
  SearchFlags search;
  std::vector<std::string> scheme;
  std::size_t radius = 3;
  double threshold = 0.01;
  std::size_t sample = kDefaultFlatnessSample;
  bool exhaustive = false;
  std::string format = "json";
};

inline int cmd_flatness(const FlatnessArgs& a, std::ostream& out) {
  check_format(a.format, {"json", "text"});
  const LoadedInput in = load(a.input);
  const Polynomial& p = in.poly;
  const Evaluator eval(p, a.input.share_signs);
  const SearchConfig cfg = a.search.config(NeighborhoodKind::Shift1);
  Scheme state;
  if (a.scheme.empty()) {
    // Measure at the best scheme an SLS run finds.
    state = sls(eval, p, cfg).best_scheme;
  } else {
    state = Scheme::from_names(p.vars(), a.scheme);
  }
  Rng rng(derive_seed(cfg.seed, 0xf1a7));
  const std::optional<std::size_t> sample = a.exhaustive ? std::nullopt : std::optional<std::size_t>(a.sample);
  const FlatnessReport rep = flatness(eval, state, a.radius, a.threshold, sample, rng, a.search.jobs);
  if (a.format == "json") {
    json j = report::flatness_json(in.id, rep, p.vars());
    j["seed"] = cfg.seed;
    out << j.dump() << '\n';
    return kOk;
  }
  out << "expression: " << in.id << "\nreference: " << rep.reference_total << "\nstate:";
  for (const auto& n : state.names(p.vars())) out << ' ' << n;
  out << '\n';
  for (const auto& l : rep.levels) {
    out << "radius " << l.radius << ": " << fixed(100.0 * l.fraction, 1) << "% close (" << l.close << '/' << l.evaluated
        << (l.sampled ? ", sampled" : "") << ")\n";
  }
  return kOk;
}

// --- expected-min ----------------------------------------------------------

struct ExpectedMinArgs {
  std::string histogram;
  std::vector<unsigned> k{1, 2, 4};
  std::string format = "text";
};

// Reads either a `value,count` CSV (header optional) or bare values.
inline std::vector<double> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::vector<double> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    for (char& c : line) {
      if (c == ',' || c == '\t' || c == ';') c = ' ';
    }
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument("trailing text");
      std::size_t count = 1;
      if (parts.size() >= 2) {
        const long long c = std::stoll(parts[1], &used);
        if (used != parts[1].size() || c < 0) throw std::invalid_argument("bad count");
        count = static_cast<std::size_t>(c);
      }
      samples.insert(samples.end(), count, v);
    } catch (const std::invalid_argument&) {
      if (lineno == 1) continue;  // header
      throw ParseError("expected 'value[,count]'", lineno, 1);
    } catch (const std::out_of_range&) {
      throw ParseError("number out of range", lineno, 1);
    }
  }
  if (samples.empty()) throw InvalidArgument("histogram '" + path + "' has no samples");
  return samples;
}

inline int cmd_expected_min(const ExpectedMinArgs& a, std::ostream& out) {
  check_format(a.format, {"text", "json", "csv"});
  const Distribution d = histogram(read_samples(a.histogram));
  json rows = json::array();
  if (a.format == "csv") report::csv_row(out, {"k", "E_min"});
  for (unsigned k : a.k) {
    const double e = expected_min(d, k);
    if (a.format == "json") {
      rows.push_back({{"k", k}, {"E_min", e}});
    } else if (a.format == "csv") {
      report::csv_row(out, {std::to_string(k), report::number(e)});
    } else {
      out << "E_min," << k << " = " << report::number(e) << '\n';
    }
  }
  if (a.format == "json") {
    out << json{{"values", d.size()}, {"mean", d.mean()}, {"rows", std::move(rows)}}.dump() << '\n';
  }
  return kOk;
}

}  // namespace detail

/// Entry point behind the `hornopt` executable. Returns the process exit
/// code: 0 success, 1 internal error, 2 parse error, 3 invalid configuration.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Horner scheme search with common subexpression elimination", "hornopt"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* c_gen = app.add_subcommand("gen", "Write a benchmark polynomial: gen res M N | gen power FILE K");
  c_gen->add_option("family", gen.family, "res or power")->required();
  c_gen->add_option("params", gen.params, "M N for res, FILE K for power")->expected(2);
  c_gen->add_option("--output,-o", gen.output, "Output .poly file (stdout when omitted)");
  c_gen->add_option("--cap", gen.cap, "Largest M+N accepted for res")->capture_default_str();
  c_gen->add_option("--format", gen.format, "text or json")->capture_default_str();

  CountArgs count;
  auto* c_count = app.add_subcommand("count", "Naive, Horner and Horner+CSE operation counts");
  add_input(c_count, count.input);
  c_count->add_option("--scheme", count.scheme, "Variable order (default: occurrence order)")->delimiter(',');
  c_count->add_option("--format", count.format, "text or json")->capture_default_str();
  c_count->add_flag("--dump", count.dump, "Print the optimized expression DAG");

  OptimizeArgs opt;
  auto* c_opt = app.add_subcommand("optimize", "Search for a Horner scheme minimizing operations");
  add_input(c_opt, opt.input);
  add_search(c_opt, opt.search, true);
  c_opt->add_option("--k", opt.k, "Independent runs; k > 1 splits them between 1shift and mirrorshift")
      ->capture_default_str();
  c_opt->add_flag("--brute", opt.brute, "Exhaustive search (at most 8 variables)");
  c_opt->add_flag("--trace", opt.trace, "Include accepted-move traces");
  c_opt->add_option("--format", opt.format, "text or json")->capture_default_str();

  SweepArgs sweep;
  auto* c_sweep = app.add_subcommand("sweep-temp", "Mean SA result per initial temperature, relative to T=0");
  add_input(c_sweep, sweep.input);
  add_search(c_sweep, sweep.search, true);
  c_sweep->add_option("--grid", sweep.grid, "Initial temperatures")->delimiter(',')->capture_default_str();
  c_sweep->add_option("--runs", sweep.runs, "Runs per temperature")->capture_default_str();
  c_sweep->add_option("--format", sweep.format, "csv or json")->capture_default_str();

  StudyArgs study;
  auto* c_study = app.add_subcommand("neighborhood-study", "Expected minimum of k runs per neighborhood and N");
  add_input(c_study, study.input);
  add_search(c_study, study.search, false);
  c_study->add_option("--kinds", study.kinds, "Neighborhoods to compare (default: all)")->delimiter(',');
  c_study->add_option("--n-values", study.n_values, "Iteration counts")->delimiter(',')->capture_default_str();
  c_study->add_option("--runs", study.runs, "Runs per (kind, N)")->capture_default_str();
  c_study->add_option("--k", study.k, "Runs combined in the expected minimum")->capture_default_str();
  c_study->add_option("--histograms", study.histograms, "Also write value counts to this CSV file");
  c_study->add_option("--format", study.format, "csv or json")->capture_default_str();

  FlatnessArgs flat;
  auto* c_flat = app.add_subcommand("flatness", "Fraction of swap neighbors with nearly equal cost");
  add_input(c_flat, flat.input);
  add_search(c_flat, flat.search, false);
  c_flat->add_option("--scheme", flat.scheme, "State to measure (default: best of one SLS run)")->delimiter(',');
  c_flat->add_option("--radius", flat.radius, "Largest swap distance, 1 to 3")->capture_default_str();
  c_flat->add_option("--threshold", flat.threshold, "Relative difference counted as close")->capture_default_str();
  c_flat->add_option("--sample", flat.sample, "States drawn per radius when it has more")->capture_default_str();
  c_flat->add_flag("--exhaustive", flat.exhaustive, "Evaluate every state at each radius");
  c_flat->add_option("--format", flat.format, "json or text")->capture_default_str();

  ExpectedMinArgs emin;
  auto* c_emin = app.add_subcommand("expected-min", "Expected minimum of k draws from a histogram");
  c_emin->add_option("--histogram", emin.histogram, "value[,count] lines")->required();
  c_emin->add_option("--k", emin.k, "Numbers of draws")->delimiter(',')->capture_default_str();
  c_emin->add_option("--format", emin.format, "text, csv or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*c_gen) return cmd_gen(gen, out);
    if (*c_count) return cmd_count(count, out);
    if (*c_opt) return cmd_optimize(opt, out);
    if (*c_sweep) return cmd_sweep(sweep, out);
    if (*c_study) return cmd_study(study, out);
    if (*c_flat) return cmd_flatness(flat, out);
    if (*c_emin) return cmd_expected_min(emin, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const InvalidArgument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}

}  // namespace hornopt::cli
