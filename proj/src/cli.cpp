#include "relaysim/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relaysim/experiments.hpp"
#include "relaysim/kernels.hpp"
#include "relaysim/propagation.hpp"
#include "relaysim/selfcheck.hpp"
#include "relaysim/simengine.hpp"
#include "relaysim/topology_io.hpp"

namespace relaysim {

namespace {

struct CliConfig {
  std::uint32_t nodes = 500;
  double radius = 75.0;
  double alpha = 4.0;
  double density = 30.0;
  std::string model = "lns";
  std::string heuristic = "original";
  double threshold = 0.5;
  std::uint32_t trials = 500;
  std::uint64_t seed = 0;
  double hello_ratio = 3.0;
  std::string reception = "table";
  std::string out;
  unsigned jobs = 0;

  // sweep
  std::string vary;
  std::vector<double> values;
  bool all_heuristics = false;
  std::vector<std::string> plots;

  // oracle
  std::uint64_t mc_trials = 100000;

  // selftest
  std::size_t cases = 1000;

  SimParams params() const {
    SimParams p;
    p.node_count = nodes;
    p.density = density;
    p.model.kind = parse_link_model(model);
    p.model.radius = radius;
    p.model.alpha = alpha;
    p.hello_ratio = hello_ratio;
    p.trials = trials;
    p.seed = seed;
    p.heuristic = parse_heuristic(heuristic);
    p.threshold = threshold;
    p.reception = parse_reception_rule(reception);
    p.validate();
    return p;
  }
};

void add_common_options(CLI::App& sub, CliConfig& c, std::string& config_path) {
  sub.add_option("--config", config_path,
                 "Flat key=value file using the long flag names; command-line flags win");
  sub.add_option("--nodes", c.nodes, "Number of nodes")->capture_default_str();
  sub.add_option("--radius", c.radius, "Communication radius R")->capture_default_str();
  sub.add_option("--alpha", c.alpha, "Power attenuation factor (lns)")->capture_default_str();
  sub.add_option("--density", c.density, "Expected nodes per communication disk")
      ->capture_default_str();
  sub.add_option("--model", c.model, "Physical layer")
      ->check(CLI::IsMember({"udg", "lns"}))
      ->capture_default_str();
  sub.add_option("--heuristic", c.heuristic, "Relay selection heuristic")
      ->check(CLI::IsMember({"original", "score", "expected", "threshold"}))
      ->capture_default_str();
  sub.add_option("--threshold", c.threshold, "Coverage threshold (threshold heuristic)")
      ->capture_default_str();
  sub.add_option("--trials", c.trials, "Independent random networks per measure")
      ->capture_default_str();
  sub.add_option("--seed", c.seed, "Master random seed")->capture_default_str();
  sub.add_option("--hello-ratio", c.hello_ratio, "HELLO timeout window over beacon period (> 1)")
      ->capture_default_str();
  sub.add_option("--reception", c.reception,
                 "table: receivers must have the sender in their neighbor table; "
                 "range: any node with p > 0 may receive")
      ->check(CLI::IsMember({"table", "range"}))
      ->capture_default_str();
  sub.add_option("--jobs", c.jobs, "Worker threads, 0 = all cores (results do not change)")
      ->capture_default_str();
  sub.add_option("--out", c.out, "Output path");
}

std::string f6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void print_params(const SimParams& p, std::ostream& out) {
  out << "model=" << to_string(p.model.kind) << '\n'
      << "heuristic=" << to_string(p.heuristic) << '\n';
  if (p.heuristic == Heuristic::Threshold) out << "threshold=" << f6(p.threshold) << '\n';
  out << "nodes=" << p.node_count << '\n'
      << "density=" << f6(p.density) << '\n'
      << "radius=" << f6(p.model.radius) << '\n'
      << "alpha=" << f6(p.model.alpha) << '\n'
      << "hello_ratio=" << f6(p.hello_ratio) << '\n'
      << "reception=" << to_string(p.reception) << '\n'
      << "trials=" << p.trials << '\n'
      << "seed=" << p.seed << '\n';
}

int cmd_gen(const CliConfig& c, std::ostream& out) {
  const SimParams p = c.params();
  auto streams = TrialStreams::for_trial(p.seed, 0);
  const Topology topo = build_topology(p, streams.topo);
  const std::string path = c.out.empty() ? "topology.txt" : c.out;
  save_topology(topo, path);
  out << "nodes=" << topo.size() << '\n'
      << "side=" << f6(topo.side()) << '\n'
      << "path=" << path << '\n';
  return 0;
}

ResultRow row_from(const SimParams& p, const AggregateStats& a) {
  ResultRow r;
  r.density = p.density;
  r.heuristic = p.heuristic;
  if (p.heuristic == Heuristic::Threshold) r.threshold = p.threshold;
  r.trials = a.trials;
  r.delivery_mean = a.delivery.mean;
  r.delivery_std = a.delivery.stddev;
  r.tx_mean = a.tx.mean;
  r.tx_std = a.tx.stddev;
  r.relay_dist_mean = a.avg_relay_distance;
  r.mpr_size_mean = a.avg_mpr_size;
  r.seed = p.seed;
  return r;
}

int cmd_run(const CliConfig& c, std::ostream& out) {
  const SimParams p = c.params();
  const AggregateStats a = run_batch(p, c.jobs);
  print_params(p, out);
  out << "delivery_mean=" << f6(a.delivery.mean) << '\n'
      << "delivery_std=" << f6(a.delivery.stddev) << '\n'
      << "tx_mean=" << f6(a.tx.mean) << '\n'
      << "tx_std=" << f6(a.tx.stddev) << '\n'
      << "avg_relay_distance=" << f6(a.avg_relay_distance) << '\n'
      << "relay_pairs=" << a.relay_pairs << '\n'
      << "avg_mpr_size=" << f6(a.avg_mpr_size) << '\n';
  if (!c.out.empty()) {
    write_csv({row_from(p, a)}, std::filesystem::path(c.out));
    out << "csv=" << c.out << '\n';
  }
  return 0;
}

int cmd_sweep(const CliConfig& c, std::ostream& out) {
  SweepSpec spec;
  spec.base = c.params();
  const Heuristic h = spec.base.heuristic;
  const std::string vary = !c.vary.empty() ? c.vary
                           : h == Heuristic::Threshold && !c.all_heuristics ? "threshold"
                                                                           : "density";
  spec.variable = vary == "threshold" ? SweepVariable::Threshold : SweepVariable::Density;
  if (spec.variable == SweepVariable::Threshold) {
    spec.values = c.values.empty() ? SweepSpec::default_thresholds() : c.values;
    spec.heuristics = {{Heuristic::Threshold, spec.base.threshold}};
  } else {
    spec.values = c.values.empty() ? SweepSpec::default_densities() : c.values;
    if (c.all_heuristics) {
      for (Heuristic x :
           {Heuristic::Original, Heuristic::Score, Heuristic::Expected, Heuristic::Threshold})
        spec.heuristics.push_back({x, spec.base.threshold});
    } else {
      spec.heuristics = {{h, spec.base.threshold}};
    }
  }
  spec.validate();
  std::vector<PlotKind> kinds;
  for (const auto& k : c.plots) {
    kinds.push_back(parse_plot_kind(k));
    const bool threshold_plot = k.ends_with("threshold");
    if (threshold_plot != (spec.variable == SweepVariable::Threshold))
      throw ParamError("plot kind " + k + " does not match a " + vary + " sweep");
  }
  if (!kinds.empty() && c.out.empty())
    throw ParamError("--plot needs --out so the script can reference the CSV file");

  const auto rows = run_sweep(spec, c.jobs);
  if (c.out.empty()) {
    write_csv(rows, out);
    return 0;
  }
  const std::filesystem::path csv(c.out);
  write_csv(rows, csv);
  out << "rows=" << rows.size() << '\n' << "csv=" << csv.string() << '\n';
  for (PlotKind k : kinds) {
    std::filesystem::path script = csv;
    script.replace_extension(std::string(".") + std::string(to_string(k)) + ".gp");
    emit_gnuplot(rows, k, csv.filename().string(), script);
    out << "plot=" << script.string() << '\n';
  }
  return 0;
}

int cmd_oracle(const CliConfig& c, std::ostream& out) {
  const SimParams p = c.params();
  if (p.node_count > kExactMaxNodes)
    throw ParamError("oracle needs --nodes <= " + std::to_string(kExactMaxNodes));
  auto streams = TrialStreams::for_trial(p.seed, 0);
  const Topology topo = build_topology(p, streams.topo);
  const KnowledgeGraph kg = build_knowledge(topo, p, streams.knowledge);
  const auto source = static_cast<NodeId>(streams.broadcast.below(p.node_count));

  const double exact = exact_delivery(topo, kg, source, p.heuristic, p.threshold);
  const Summary mc =
      monte_carlo_delivery(topo, kg, source, p.heuristic, p.threshold, c.mc_trials, streams.broadcast);
  // binomial standard error of a [0, 1] mean, taken at the exact value
  const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(c.mc_trials));
  const double tolerance = std::max(4.0 * se, 1e-12);
  const double gap = std::abs(mc.mean - exact);
  print_params(p, out);
  out << "source=" << source << '\n'
      << "exact=" << f6(exact) << '\n'
      << "monte_carlo=" << f6(mc.mean) << '\n'
      << "mc_trials=" << c.mc_trials << '\n'
      << "std_error=" << f6(se) << '\n'
      << "gap=" << f6(gap) << '\n'
      << "tolerance=" << f6(tolerance) << '\n'
      << "within_tolerance=" << (gap <= tolerance ? "true" : "false") << '\n';
  return gap <= tolerance ? 0 : 1;
}

int cmd_selftest(const CliConfig& c, std::ostream& out) {
  const auto results = run_property_suite(c.seed, c.cases);
  out << "kernel_isa=" << kernels::to_string(kernels::active().isa) << '\n';
  bool ok = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << "check" << i + 1 << '=' << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << " ("
        << r.cases << " cases)";
    if (!r.passed) out << ": " << r.detail;
    out << '\n';
    ok = ok && r.passed;
  }
  out << "result=" << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? 0 : 1;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string flag_name(const std::string& arg) {
  if (!arg.starts_with("--")) return {};
  return arg.substr(2, arg.find('=') == std::string::npos ? std::string::npos : arg.find('=') - 2);
}

// Expands `--config FILE` into ordinary flags placed before the command-line
// ones. Keys also given on the command line are skipped; unknown keys throw.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const CLI::App& app) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty() || rest.size() < 2) return args;

  const CLI::App* sub = app.get_subcommand_no_throw(rest[1]);
  if (sub == nullptr) return args;

  std::set<std::string> given;
  for (const auto& a : rest) given.insert(flag_name(a));

  std::ifstream in(path);
  if (!in) throw ParamError("cannot read config file: " + path);
  std::vector<std::string> from_file;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParamError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr || key == "help" || key == "config")
      throw ParamError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (given.count(key)) continue;
    if (opt->get_items_expected_max() == 0) {
      if (value == "true" || value == "1") from_file.push_back("--" + key);
      else if (value != "false" && value != "0")
        throw ParamError(path + ":" + std::to_string(lineno) + ": expected true or false");
    } else {
      from_file.push_back("--" + key);
      from_file.push_back(value);
    }
  }
  std::vector<std::string> out{rest[0], rest[1]};
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin() + 2, rest.end());
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  std::string config_path;
  CLI::App app{"Multipoint relay broadcast simulator over unit disk and lognormal shadowing links",
               "relaysim"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Write one random topology file");
  auto* run = app.add_subcommand("run", "Run one batch and print aggregate statistics");
  auto* sweep = app.add_subcommand("sweep", "Sweep density or threshold and write CSV");
  auto* oracle =
      app.add_subcommand("oracle", "Compare exact and Monte Carlo delivery on a small instance");
  auto* selftest = app.add_subcommand("selftest", "Run the randomized invariant suite");
  for (auto* sub : {gen, run, sweep, oracle, selftest}) add_common_options(*sub, cfg, config_path);

  sweep->add_option("--vary", cfg.vary, "Swept variable (default: threshold for the threshold heuristic, else density)")
      ->check(CLI::IsMember({"density", "threshold"}));
  sweep->add_option("--values", cfg.values, "Sweep grid, strictly increasing")->delimiter(',');
  sweep->add_flag("--all-heuristics", cfg.all_heuristics, "Density sweep over all four heuristics");
  sweep->add_option("--plot", cfg.plots, "Gnuplot script(s) to emit next to the CSV")
      ->check(CLI::IsMember({"delivery-density", "tx-density", "delivery-threshold", "tx-threshold"}))
      ->delimiter(',');
  oracle->add_option("--mc-trials", cfg.mc_trials, "Monte Carlo repetitions")->capture_default_str();
  selftest->add_option("--cases", cfg.cases, "Minimum randomized cases per property")
      ->capture_default_str();

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(args, app);
    std::vector<const char*> expanded;
    for (const auto& a : args) expanded.push_back(a.c_str());
    app.parse(static_cast<int>(expanded.size()), expanded.data());
  } catch (const ParamError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*gen) return cmd_gen(cfg, out);
    if (*run) return cmd_run(cfg, out);
    if (*sweep) return cmd_sweep(cfg, out);
    if (*oracle) return cmd_oracle(cfg, out);
    if (*selftest) return cmd_selftest(cfg, out);
  } catch (const ParamError& e) {
    err << "error: " << e.what() << "\nRun 'relaysim <command> --help' for usage.\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace relaysim
