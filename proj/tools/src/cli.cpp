#include "wfc_cli/cli.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wfc/windfall.hpp"
#include "wfc_cli/report.hpp"
#include "wfc_cli/sweep.hpp"
#include "wfc_cli/verify.hpp"

namespace wfc::cli {

namespace {

struct Inputs {
  RaceParams params;
  std::optional<double> tau;
  std::optional<double> ewc;
  std::optional<double> stop;

  std::string figure;
  std::vector<std::string> axes;
  std::string out;
  std::string format = "csv";

  std::optional<std::uint64_t> trials;
  std::uint64_t seed = SimConfig{}.seed;
  std::uint64_t profiles = VerifyOptions{}.profiles;
  std::size_t grid = VerifyOptions{}.grid_points;
  double epsilon = VerifyOptions{}.epsilon;
  unsigned threads = 0;
  bool no_mc = false;
  bool no_best_response = false;
  bool inject_bug = false;
};

void add_race_options(CLI::App* sub, Inputs& in) {
  sub->add_option("--n", in.params.n, "number of firms")->capture_default_str();
  sub->add_option("--mu", in.params.mu, "capability range [0, mu]")->capture_default_str();
  sub->add_option("--e", in.params.e, "enmity")->capture_default_str();
}

// --config FILE, found before the real parse so its values can be spliced in
// ahead of the user's own flags.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

std::vector<std::string> strip_config(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      ++i;
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

// Translates flat "key = value" lines into "--key value" flags for `sub`.
std::vector<std::string> config_args(const std::string& path, CLI::App* sub) {
  std::vector<std::string> args;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    if (!item.parents.empty()) {
      throw std::invalid_argument("config file must be flat key = value lines: " + item.fullname());
    }
    const std::string flag = "--" + item.name;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr) {
      throw std::invalid_argument("config key '" + item.name + "' is not an option of '" +
                                  sub->get_name() + "'");
    }
    if (opt->get_type_size() == 0) {
      if (item.inputs.empty() || item.inputs.front() == "true" || item.inputs.front() == "1") {
        args.push_back(flag);
      }
      continue;
    }
    for (const auto& value : item.inputs) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_atomic(path, content);
  }
}

int do_point(const Inputs& in, std::ostream& out) {
  if (in.tau.has_value() != in.ewc.has_value()) {
    throw std::invalid_argument("--tau and --ewc must be given together");
  }
  std::optional<WindfallClause> clause;
  if (in.tau) clause = WindfallClause{*in.tau, *in.ewc};
  run_point(in.params, clause, out);
  return kExitOk;
}

int do_limits(const Inputs& in, std::ostream& out) {
  run_limits(in.params, in.stop, in.ewc, out);
  return kExitOk;
}

int do_sweep(const Inputs& in, std::ostream& out, std::ostream& err) {
  if (in.figure.empty()) throw std::invalid_argument("--figure is required");
  const auto id = parse_figure_id(in.figure);
  if (!id) throw std::invalid_argument("unknown figure '" + in.figure + "'");

  SweepSpec spec = default_spec(*id);
  spec.fixed = in.params;
  for (const auto& text : in.axes) override_axis(spec, parse_axis(text));
  if (in.format == "json") {
    spec.format = OutputFormat::kJson;
  } else if (in.format != "csv") {
    throw std::invalid_argument("format must be csv or json");
  }
  if (in.trials) {
    SimConfig sim;
    sim.trials = *in.trials;
    sim.seed = in.seed;
    spec.sim = sim;
  }
  spec.threads = in.threads;
  spec.output = in.out;

  const Table table = run_sweep(spec);
  write_output(in.out, render(table, spec.format), out);
  if (!in.out.empty() && in.out != "-") {
    err << "wrote " << table.rows.size() << " rows to " << in.out << '\n';
  }
  return kExitOk;
}

int do_verify(const Inputs& in, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  if (in.trials) options.trials = *in.trials;
  options.seed = in.seed;
  options.profiles = in.profiles;
  options.grid_points = in.grid;
  options.epsilon = in.epsilon;
  options.threads = in.threads;
  options.monte_carlo = !in.no_mc;
  options.best_response = !in.no_best_response;
  options.inject_bug = in.inject_bug;

  const VerifyResult result = run_verify(options);
  write_verify_csv(result, out);
  err << "verify: " << result.checks.size() << " checks, " << result.failures << " failed\n";
  return result.pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibria, payoffs and Windfall Clause rationality for the AI race model", "wfc"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--config", "flat key = value file; flags given on the command line win");

  Inputs in;

  auto* point = app.add_subcommand("point", "disaster risk, payoffs and clause verdict at one point");
  add_race_options(point, in);
  point->add_option("--tau", in.tau, "pledged share of windfall profits");
  point->add_option("--ewc", in.ewc, "donation enmity");

  auto* limits = app.add_subcommand("limits", "early and late donation enmity limits");
  add_race_options(limits, in);
  limits->add_option("--stop", in.stop, "leader safety without a clause (late clause)");
  limits->add_option("--ewc", in.ewc, "donation enmity (late bounds; needs --stop)");

  auto* sweep = app.add_subcommand("sweep", "write the data behind a figure, or a custom grid");
  sweep->add_option("--figure", in.figure, "fig1 fig2 fig3a fig3b fig3c fig4 fig5 custom");
  sweep->add_option("--axis", in.axes, "name=lo:hi:steps or name=v1,v2,... (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  add_race_options(sweep, in);
  sweep->add_option("--out", in.out, "output file (default stdout)");
  sweep->add_option("--format", in.format, "csv or json")->capture_default_str();
  sweep->add_option("--trials", in.trials, "add Monte Carlo columns with this many trials");
  sweep->add_option("--seed", in.seed)->capture_default_str();
  sweep->add_option("--threads", in.threads, "0: WFC_THREADS or all cores");

  auto* verify = app.add_subcommand("verify", "Monte Carlo and best-response checks on the lattice");
  verify->add_option("--trials", in.trials, "Monte Carlo trials per point (default 100000)");
  verify->add_option("--seed", in.seed)->capture_default_str();
  verify->add_option("--profiles", in.profiles, "profiles per point for best responses")
      ->capture_default_str();
  verify->add_option("--grid", in.grid, "deviation grid points")->capture_default_str();
  verify->add_option("--epsilon", in.epsilon, "best-response slack")->capture_default_str();
  verify->add_option("--threads", in.threads, "0: WFC_THREADS or all cores");
  verify->add_flag("--no-mc", in.no_mc, "skip the Monte Carlo checks");
  verify->add_flag("--no-best-response", in.no_best_response, "skip the best-response checks");
  verify->add_flag("--inject-bug", in.inject_bug)->group("");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (const auto path = find_config(args)) {
      args = strip_config(args);
      const auto sub_pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return app.get_subcommand_no_throw(a) != nullptr;
      });
      if (sub_pos == args.end()) throw CLI::RequiredError("A subcommand");
      const auto injected = config_args(*path, app.get_subcommand(*sub_pos));
      args.insert(sub_pos + 1, injected.begin(), injected.end());
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (point->parsed()) return do_point(in, out);
    if (limits->parsed()) return do_limits(in, out);
    if (sweep->parsed()) return do_sweep(in, out, err);
    return do_verify(in, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace wfc::cli
