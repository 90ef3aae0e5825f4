#include "ep/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "ep/cli/csv.hpp"
#include "ep/cli/svg_plot.hpp"
#include "ep/core/class_io.hpp"
#include "ep/core/potential.hpp"
#include "ep/core/random_class.hpp"
#include "ep/core/value.hpp"
#include "ep/harness/aggregate.hpp"

namespace ep::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::vector<double> arms;
  std::vector<std::string> algs{"roundrobin", "egreedy", "ucb1", "ocucb", "thompson", "oracle", "minep"};
  std::size_t steps = 10'000;
  std::size_t seeds = 100;
  std::size_t ep_samples = 1000;
  std::size_t ep_per_decade = 50;
  double epsilon = 0.1;
  std::size_t ocucb_horizon = 0;
  std::size_t minep_samples = 1000;
  std::uint64_t seed_base = 0;
  std::size_t threads = 0;
  std::string out;
};

struct PlotOptions {
  std::string in;
  std::string kind = "ep";
  bool loglog = false;
  bool band = false;
  std::vector<double> ref_sqrt;
  std::string out;
};

struct BoundOptions {
  std::string class_path;
  std::size_t random_trials = 0;
  std::size_t trials = 10;
  std::size_t steps = 50;
  double gamma = 0.95;
  std::uint64_t seed = 0;
  std::size_t budget = 100'000;
};

harness::ExperimentConfig make_config(const RunOptions& o) {
  harness::ExperimentConfig config;
  config.means = o.arms;
  for (double m : o.arms) {
    if (!(m >= 0.0 && m <= 1.0)) throw UsageError("arm means must lie in [0,1]");
  }
  for (const auto& name : o.algs) {
    const auto kind = bandit::parse_algorithm(name);
    if (!kind) throw UsageError("unknown algorithm '" + name + "'");
    bandit::AlgorithmSpec spec{.kind = *kind,
                               .epsilon = o.epsilon,
                               .horizon = o.ocucb_horizon,
                               .ep_samples = o.minep_samples};
    config.algorithms.push_back(spec);
  }
  config.horizon = o.steps;
  config.seeds = o.seeds;
  config.ep_samples = o.ep_samples;
  config.base_seed = o.seed_base;
  config.threads = o.threads;
  if (o.steps < 1 || o.seeds < 1) throw UsageError("--steps and --seeds must be at least 1");
  if (o.ep_per_decade > 0) config.ep_schedule = harness::geometric_schedule(o.steps, o.ep_per_decade);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return config;
}

int cmd_run(const RunOptions& o, std::ostream& out, std::ostream& err) {
  const harness::ExperimentConfig config = make_config(o);
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot write " << o.out << '\n';
    return kRuntimeError;
  }
  write_header(file);
  std::size_t rows = 0;
  for (const auto& alg : config.algorithms) {
    for (const auto& trace : harness::run_seeds(config, alg)) {
      write_trace(file, trace);
      rows += trace.records.size();
    }
  }
  file.flush();
  if (!file) {
    err << "error: failed writing " << o.out << '\n';
    return kRuntimeError;
  }
  out << "wrote " << rows << " rows to " << o.out << '\n';
  return kSuccess;
}

int cmd_plot(const PlotOptions& o, std::ostream& out, std::ostream& err) {
  PlotSpec spec;
  if (o.kind == "ep") {
    spec.kind = PlotKind::ep;
  } else if (o.kind == "regret") {
    spec.kind = PlotKind::regret;
  } else {
    throw UsageError("--kind must be ep or regret");
  }
  spec.loglog = o.loglog;
  spec.band = o.band;
  if (!o.ref_sqrt.empty()) {
    if (o.ref_sqrt.size() != 2 || !(o.ref_sqrt[0] > 0.0) || !(o.ref_sqrt[1] > 0.0)) {
      throw UsageError("--ref-sqrt expects two positive numbers t0,y0");
    }
    spec.reference = ReferenceLine{o.ref_sqrt[0], o.ref_sqrt[1]};
  }

  std::ifstream in(o.in, std::ios::binary);
  if (!in) {
    err << "error: cannot read " << o.in << '\n';
    return kRuntimeError;
  }
  std::vector<harness::AggregateSeries> series;
  try {
    const auto rows = read_csv(in);
    if (rows.empty()) {
      err << "error: " << o.in << " has no data rows\n";
      return kRuntimeError;
    }
    // aggregate per algorithm, in order of first appearance
    const auto traces = rows_to_traces(rows);
    std::vector<std::string> order;
    for (const auto& tr : traces) {
      if (std::find(order.begin(), order.end(), tr.algorithm) == order.end()) order.push_back(tr.algorithm);
    }
    for (const auto& name : order) {
      std::vector<harness::Trace> group;
      for (const auto& tr : traces) {
        if (tr.algorithm == name) group.push_back(tr);
      }
      series.push_back(harness::aggregate(group));
    }
  } catch (const CsvError& e) {
    err << "error: " << o.in << ": " << e.what() << '\n';
    return kRuntimeError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << o.in << ": " << e.what() << '\n';
    return kRuntimeError;
  }

  std::string svg;
  try {
    svg = render_svg(series, spec);
  } catch (const PlotError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file || !(file << svg)) {
    err << "error: cannot write " << o.out << '\n';
    return kRuntimeError;
  }
  out << "wrote " << o.out << '\n';
  return kSuccess;
}

struct BoundTally {
  std::size_t checks = 0;
  std::size_t violations = 0;
  double max_gap = -std::numeric_limits<double>::infinity();  // max lhs - rhs
  double max_lhs = -std::numeric_limits<double>::infinity();
  double max_rhs = -std::numeric_limits<double>::infinity();

  void add(const core::BoundReport& r) {
    ++checks;
    if (!r.holds) ++violations;
    max_gap = std::max(max_gap, r.lhs - r.rhs);
    max_lhs = std::max(max_lhs, r.lhs);
    max_rhs = std::max(max_rhs, r.rhs);
  }
};

void check_history(const core::FiniteEnvironmentClass& cls, std::size_t steps, double gamma,
                   const core::BoundOptions& options, Rng& rng, BoundTally& tally) {
  const std::size_t mu = std::uniform_int_distribution<std::size_t>(0, cls.size() - 1)(rng);
  tally.add(core::optimality_bound_check(cls, mu, core::BeliefState::initial(cls), gamma, options));
  for (const auto& step : core::random_history(cls, mu, steps, rng)) {
    tally.add(core::optimality_bound_check(cls, mu, step.belief, gamma, options));
  }
}

int cmd_check_bound(const BoundOptions& o, std::ostream& out) {
  try {
    core::require_discount(o.gamma);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const core::BoundOptions options{o.budget};
  Rng rng(mix64(o.seed));
  BoundTally tally;
  if (!o.class_path.empty()) {
    core::FiniteEnvironmentClass cls = [&] {
      try {
        return core::load_class(o.class_path);
      } catch (const std::exception& e) {
        throw std::runtime_error(o.class_path + ": " + e.what());
      }
    }();
    for (std::size_t trial = 0; trial < o.trials; ++trial) check_history(cls, o.steps, o.gamma, options, rng, tally);
    out << "class: " << o.class_path << " (" << cls.size() << " environments)\n";
  } else {
    for (std::size_t trial = 0; trial < o.random_trials; ++trial) {
      const auto cls = core::random_class(rng);
      check_history(cls, o.steps, o.gamma, options, rng, tally);
    }
    out << "random classes: " << o.random_trials << '\n';
  }
  out << "checks: " << tally.checks << '\n';
  out << "violations: " << tally.violations << '\n';
  out << "max lhs: " << format_real(tally.max_lhs) << '\n';
  out << "max rhs: " << format_real(tally.max_rhs) << '\n';
  out << "max lhs-rhs: " << format_real(tally.max_gap) << '\n';
  out << "result: " << (tally.violations == 0 ? "all hold" : "VIOLATED") << '\n';
  return tally.violations == 0 ? kSuccess : kRuntimeError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exploration potential experiments and bound checks", "epot"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run bandit experiments and write a CSV trace");
  run_cmd->add_option("--arms", run.arms, "Arm means, comma separated")->required()->delimiter(',');
  run_cmd->add_option("--algs", run.algs, "Algorithms: roundrobin,egreedy,ucb1,ocucb,thompson,oracle,minep")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--steps", run.steps, "Horizon T")->capture_default_str();
  run_cmd->add_option("--seeds", run.seeds, "Seeds per algorithm")->capture_default_str();
  run_cmd->add_option("--ep-samples", run.ep_samples, "Monte-Carlo samples per recorded EP")->capture_default_str();
  run_cmd->add_option("--ep-per-decade", run.ep_per_decade, "EP recording points per decade (0 disables)")
      ->capture_default_str();
  run_cmd->add_option("--epsilon", run.epsilon, "epsilon-greedy exploration rate")->capture_default_str();
  run_cmd->add_option("--ocucb-horizon", run.ocucb_horizon, "Horizon given to OCUCB (default: --steps)");
  run_cmd->add_option("--minep-samples", run.minep_samples, "Monte-Carlo samples per MinEP decision")
      ->capture_default_str();
  run_cmd->add_option("--seed-base", run.seed_base, "Base seed")->capture_default_str();
  run_cmd->add_option("--threads", run.threads, "Worker threads (0: hardware concurrency)");
  run_cmd->add_option("--out", run.out, "Output CSV path")->required();

  PlotOptions plot;
  auto* plot_cmd = app.add_subcommand("plot", "Render EP or regret curves from a CSV trace as SVG");
  plot_cmd->add_option("--in", plot.in, "Input CSV")->required();
  plot_cmd->add_option("--kind", plot.kind, "ep or regret")->capture_default_str();
  plot_cmd->add_flag("--loglog", plot.loglog, "Double logarithmic axes");
  plot_cmd->add_flag("--band", plot.band, "Shade one standard deviation");
  plot_cmd->add_option("--ref-sqrt", plot.ref_sqrt, "Dashed t^-1/2 reference through t0,y0")->delimiter(',');
  plot_cmd->add_option("--out", plot.out, "Output SVG path")->required();

  BoundOptions bound;
  auto* bound_cmd = app.add_subcommand("check-bound", "Check the optimality bound on finite environment classes");
  auto* class_opt = bound_cmd->add_option("--class", bound.class_path, "Class description file");
  auto* random_opt = bound_cmd->add_option("--random", bound.random_trials, "Number of random classes");
  class_opt->excludes(random_opt);
  bound_cmd->add_option("--trials", bound.trials, "Random histories per class file")->capture_default_str();
  bound_cmd->add_option("--steps", bound.steps, "Steps per history")->capture_default_str();
  bound_cmd->add_option("--gamma", bound.gamma, "Discount factor")->capture_default_str();
  bound_cmd->add_option("--seed", bound.seed, "Random seed")->capture_default_str();
  bound_cmd->add_option("--budget", bound.budget, "Policy-enumeration budget")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (bound_cmd->parsed() && class_opt->count() == 0 && random_opt->count() == 0) {
      throw UsageError("check-bound needs --class PATH or --random TRIALS");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run, out, err);
    if (plot_cmd->parsed()) return cmd_plot(plot, out, err);
    return cmd_check_bound(bound, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace ep::cli
