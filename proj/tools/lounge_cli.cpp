#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lounge/analytic.hpp"
#include "lounge/config.hpp"
#include "lounge/ctmc.hpp"
#include "lounge/design.hpp"
#include "lounge/policy.hpp"
#include "lounge/sim.hpp"
#include "lounge/validation.hpp"

using namespace lounge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kNumerical = 2;

class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config;
  ParamInputs flags;
  std::string out_dir;
  std::string format;
  int jobs = 1;
};

/// Writes name under the output directory, if one is set.
void store(const Common& c, const std::string& name, const std::string& body) {
  if (c.out_dir.empty()) return;
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  const fs::path path = fs::path(c.out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  f << body;
  if (!f) throw WriteError("cannot write " + path.string());
}

/// Prints the artifact and stores it.
void emit(const Common& c, const std::string& name, const std::string& body) {
  std::cout << body;
  store(c, name, body);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

bool want_json(const Common& c, bool json_default) { return c.format.empty() ? json_default : c.format == "json"; }

ParamInputs inputs(const Common& c) {
  const ParamInputs file = c.config.empty() ? ParamInputs{} : read_config_file(c.config);
  return merge(file, c.flags);
}

SystemParams params_from(const Common& c) { return SystemParams::from(resolve(inputs(c))); }

json params_json(const SystemParams& p) {
  return {{"lambda", p.lambda()}, {"mu", p.mu()}, {"nu", p.nu()}, {"alpha", p.alpha()}, {"beta", p.beta()}};
}

json thresholds_json(const DerivedThresholds& t) {
  return {{"rho", t.rho},       {"delta", t.delta},   {"eta", t.eta},     {"a_real", t.a_real},
          {"b_real", t.b_real}, {"a_int", t.a_int},   {"b_int", t.b_int}, {"lounge_active", t.lounge_active}};
}

std::string dist_csv(const StationaryDistribution& d) {
  std::ostringstream os;
  write_csv(d, os);
  return os.str();
}

std::string dist_json(const StationaryDistribution& d) {
  std::ostringstream os;
  write_json(d, os);
  return os.str();
}

int cmd_thresholds(const Common& c) {
  const auto p = params_from(c);
  const auto t = derive_thresholds(p);
  if (want_json(c, true)) {
    emit(c, "thresholds.json", dump(thresholds_json(t)));
  } else {
    emit(c, "thresholds.csv",
         "rho,delta,eta,a_real,b_real,a_int,b_int,lounge_active\n" + num(t.rho) + "," + num(t.delta) + "," +
             num(t.eta) + "," + num(t.a_real) + "," + num(t.b_real) + "," + std::to_string(t.a_int) + "," +
             std::to_string(t.b_int) + "," + (t.lounge_active ? "true" : "false") + "\n");
  }
  return kOk;
}

int cmd_decide(const Common& c, int q, int l) {
  if (q < 0 || l < 0) throw std::invalid_argument("q and l must be non-negative");
  const auto p = params_from(c);
  const ObservedState s{q, l};
  const auto action = decide(s, p);
  const json j = {{"q", q},
                  {"l", l},
                  {"cost_join_queue", cost_join_queue(s, p)},
                  {"cost_join_lounge", cost_join_lounge(s, p)},
                  {"action", to_string(action)},
                  {"threshold_action", to_string(decide_threshold(s, derive_thresholds(p)))}};
  emit(c, "decide.json", dump(j));
  return kOk;
}

int cmd_analyze(const Common& c, const std::string& source, int q_max) {
  const auto p = params_from(c);
  const auto t = derive_thresholds(p);
  StationaryDistribution d;
  if (source == "oracle") {
    const int k = q_max > 0 ? q_max : std::max(tail_truncation(t.rho), t.a_int + t.b_int + 3);
    d = solve_stationary(build_generator(p, t, k));
  } else if (source == "b1-closed-form") {
    d = b1_stationary(p, q_max);
  } else if (source == "approx-closed-form") {
    d = approx_stationary(t.rho, t.a_int);
  } else {
    throw std::invalid_argument("unknown source: " + source);
  }
  if (want_json(c, false)) {
    emit(c, "analyze.json", dist_json(d));
  } else {
    emit(c, "analyze.csv", dist_csv(d));
  }
  return kOk;
}

int print_checks(const Common& c, const std::string& name, const std::vector<CheckResult>& checks) {
  bool all = true;
  for (const auto& r : checks) all = all && r.passed;
  if (want_json(c, false)) {
    json rows = json::array();
    for (const auto& r : checks)
      rows.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"value", r.value},
                      {"threshold", r.threshold},
                      {"detail", r.detail}});
    emit(c, name + ".json", dump({{"passed", all}, {"checks", rows}}));
  } else {
    std::ostringstream os;
    for (const auto& r : checks) {
      os << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(48) << r.name << std::right
         << std::setw(12) << std::setprecision(3) << std::scientific << r.value << "  < " << std::setprecision(1)
         << r.threshold << std::defaultfloat;
      if (!r.detail.empty()) os << "  " << r.detail;
      os << '\n';
    }
    os << (all ? "all checks passed" : "some checks FAILED") << '\n';
    emit(c, name + ".txt", os.str());
  }
  return all ? kOk : kInvalid;
}

int cmd_simulate(const Common& c, SimConfig cfg) {
  const auto p = params_from(c);
  cfg.jobs = c.jobs;
  const auto r = simulate(p, cfg);
  json reps = json::array();
  for (const auto& rep : r.replications)
    reps.push_back({{"seed", rep.seed},
                    {"event_count", rep.event_count},
                    {"sim_time", rep.sim_time},
                    {"arrivals", rep.arrivals},
                    {"lounge_entries", rep.lounge_entries},
                    {"lounge_entry_fraction", rep.lounge_entry_fraction},
                    {"mean_q", rep.mean_q},
                    {"mean_l", rep.mean_l},
                    {"second_moment_q", rep.second_moment_q},
                    {"second_moment_l", rep.second_moment_l}});
  std::vector<double> fractions;
  for (const auto& rep : r.replications) fractions.push_back(rep.lounge_entry_fraction);
  const auto ci = mean_ci(fractions);
  const json summary = {{"params", params_json(p)},
                        {"config",
                         {{"seed", cfg.seed},
                          {"events", cfg.total_events},
                          {"warmup_fraction", cfg.warmup_fraction},
                          {"replications", cfg.replications},
                          {"policy", to_string(cfg.policy)}}},
                        {"lounge_entry_fraction", r.lounge_entry_fraction},
                        {"lounge_entry_fraction_ci_half_width", ci.half_width},
                        {"mean_q", r.mean_q},
                        {"mean_l", r.mean_l},
                        {"second_moment_q", r.second_moment_q},
                        {"second_moment_l", r.second_moment_l},
                        {"event_count", r.event_count},
                        {"sim_time", r.sim_time},
                        {"replications", reps}};
  if (want_json(c, true)) {
    emit(c, "simulate.json", dump(summary));
    store(c, "simulate_dist.csv", dist_csv(r.empirical_dist));
  } else {
    emit(c, "simulate_dist.csv", dist_csv(r.empirical_dist));
    store(c, "simulate.json", dump(summary));
  }
  return kOk;
}

int cmd_conjecture(const Common& c, const std::string& mode_name, std::vector<double> nus, SimConfig cfg) {
  auto in = inputs(c);
  const RawParams base{in.lambda.value_or(6.0), in.mu.value_or(7.2), 0.0, in.alpha.value_or(0.45), 0.0};
  if (in.beta && !in.eta) throw ConfigError("conjecture-sweep takes eta, not beta");
  const double eta = in.eta.value_or(0.35);
  SweepMode mode;
  if (mode_name == "oracle") {
    mode = SweepMode::oracle;
  } else if (mode_name == "monte-carlo") {
    mode = SweepMode::monte_carlo;
  } else {
    throw std::invalid_argument("unknown mode: " + mode_name);
  }
  cfg.jobs = c.jobs;
  const auto rows = conjecture_sweep(base, eta, nus, mode, cfg);
  if (want_json(c, false)) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"nu", r.nu},
                     {"a_int", r.a_int},
                     {"b_int", r.b_int},
                     {"sup_distance", r.sup_distance},
                     {"ci_half_width", r.ci_half_width},
                     {"replications", r.replications}});
    emit(c, "conjecture_sweep.json", dump({{"mode", mode_name}, {"eta", eta}, {"rows", arr}}));
  } else {
    std::string s = "nu,a_int,b_int,sup_distance,ci_half_width,replications\n";
    for (const auto& r : rows)
      s += num(r.nu) + "," + std::to_string(r.a_int) + "," + std::to_string(r.b_int) + "," + num(r.sup_distance) +
           "," + num(r.ci_half_width) + "," + std::to_string(r.replications) + "\n";
    emit(c, "conjecture_sweep.csv", s);
  }
  return kOk;
}

int cmd_design(const Common& c, const std::vector<double>& omegas, const std::vector<double>& rhos,
               const std::string& source) {
  const auto in = inputs(c);
  const double mu = in.mu.value_or(2.5), nu = in.nu.value_or(0.1);
  const auto rows = design_sweep(mu, nu, omegas, rhos, parse_source(source), c.jobs);
  if (want_json(c, false)) {
    json arr = json::array();
    for (const auto& r : rows) {
      json j = {{"omega", r.omega},
                {"rho", r.rho},
                {"b_of_a_star", r.b_of_a_star},
                {"g_baseline", r.g_baseline},
                {"verdict", to_string(r.verdict)}};
      j["a_star"] = r.a_star ? json(*r.a_star) : json(nullptr);
      j["g_star"] = r.g_star ? json(*r.g_star) : json(nullptr);
      arr.push_back(j);
    }
    emit(c, "design_sweep.json", dump({{"mu", mu}, {"nu", nu}, {"source", source}, {"rows", arr}}));
  } else {
    std::string s = "omega,rho,a_star,b_of_a_star,g_star,g_baseline,verdict\n";
    for (const auto& r : rows)
      s += num(r.omega) + "," + num(r.rho) + "," + (r.a_star ? std::to_string(*r.a_star) : "") + "," +
           std::to_string(r.b_of_a_star) + "," + (r.g_star ? num(*r.g_star) : "") + "," + num(r.g_baseline) + "," +
           to_string(r.verdict) + "\n";
    emit(c, "design_sweep.csv", s);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Queue and lounge model: thresholds, stationary laws, simulation and design sweeps"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  if (const char* env = std::getenv("LOUNGE_OUT_DIR")) c.out_dir = env;
  app.add_option("--config", c.config, "key=value parameter file")->check(CLI::ExistingFile);
  app.add_option("--lambda", c.flags.lambda, "arrival rate");
  app.add_option("--mu", c.flags.mu, "service rate");
  app.add_option("--nu", c.flags.nu, "lounge exit rate");
  app.add_option("--alpha", c.flags.alpha, "waiting cost rate in the queue");
  app.add_option("--beta", c.flags.beta, "waiting cost rate in the lounge");
  app.add_option("--eta", c.flags.eta, "comfort factor beta / nu");
  app.add_option("--out", c.out_dir, "output directory (default $LOUNGE_OUT_DIR)");
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", c.jobs, "worker threads for sweeps and replications")->check(CLI::PositiveNumber);

  auto* thresholds = app.add_subcommand("thresholds", "derived thresholds A and B");

  auto* decide_cmd = app.add_subcommand("decide", "costs and action for one observed state");
  int q = 0, l = 0;
  decide_cmd->add_option("--q", q, "queue length")->required();
  decide_cmd->add_option("--l", l, "lounge occupancy")->required();

  auto* analyze = app.add_subcommand("analyze", "stationary distribution");
  std::string analyze_source = "oracle";
  int q_max = -1;
  analyze->add_option("--source", analyze_source, "oracle, b1-closed-form or approx-closed-form")
      ->check(CLI::IsMember({"oracle", "b1-closed-form", "approx-closed-form"}));
  analyze->add_option("--q-max", q_max, "queue truncation (default from the tail bound)");

  auto* oracle_validate_cmd = app.add_subcommand("oracle-validate", "closed forms against the numerical oracle");

  SimConfig sim;
  std::string policy = "exact-cost";
  auto add_sim_options = [&](CLI::App* sub) {
    sub->add_option("--seed", sim.seed, "base seed; replication r uses seed ^ r");
    sub->add_option("--events", sim.total_events, "events per replication")->check(CLI::PositiveNumber);
    sub->add_option("--warmup", sim.warmup_fraction, "discarded fraction of simulated time")
        ->check(CLI::Range(0.0, 0.99));
    sub->add_option("--reps", sim.replications, "replications")->check(CLI::PositiveNumber);
  };
  auto* simulate_cmd = app.add_subcommand("simulate", "discrete-event simulation");
  add_sim_options(simulate_cmd);
  simulate_cmd->add_option("--policy", policy, "exact-cost, threshold or approximating")
      ->check(CLI::IsMember({"exact-cost", "threshold", "approximating"}));

  auto* conjecture = app.add_subcommand("conjecture-sweep", "distance to the small-nu limit law");
  std::string mode = "oracle";
  std::vector<double> nus{0.4, 0.2, 0.1, 0.05};
  conjecture->add_option("--mode", mode, "oracle or monte-carlo")->check(CLI::IsMember({"oracle", "monte-carlo"}));
  conjecture->add_option("--nus", nus, "comma-separated nu values")->delimiter(',');
  add_sim_options(conjecture);

  auto* design = app.add_subcommand("design-sweep", "optimal queue threshold over (omega, rho)");
  std::vector<double> omegas{1.2};
  std::vector<double> rhos{0.4, 0.55, 0.7};
  std::string design_source = "approx-closed-form";
  design->add_option("--omega", omegas, "comma-separated lounge congestion weights")->delimiter(',');
  design->add_option("--rho", rhos, "comma-separated loads")->delimiter(',');
  design->add_option("--source", design_source, "approx-closed-form or oracle")
      ->check(CLI::IsMember({"approx-closed-form", "oracle"}));

  auto* validate = app.add_subcommand("validate", "full reproduction suite as a pass/fail table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*thresholds) return cmd_thresholds(c);
    if (*decide_cmd) return cmd_decide(c, q, l);
    if (*analyze) return cmd_analyze(c, analyze_source, q_max);
    if (*oracle_validate_cmd) return print_checks(c, "oracle_validate", oracle_validate(params_from(c)));
    if (*simulate_cmd) {
      sim.policy = parse_policy(policy);
      return cmd_simulate(c, sim);
    }
    if (*conjecture) {
      if (conjecture->count("--events") == 0) sim.total_events = 1'000'000;
      if (conjecture->count("--reps") == 0) sim.replications = 5;
      return cmd_conjecture(c, mode, nus, sim);
    }
    if (*design) return cmd_design(c, omegas, rhos, design_source);
    if (*validate) return print_checks(c, "validate", run_validation_suite());
  } catch (const SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumerical;
  } catch (const TruncationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const InvalidParams& e) {
    std::cerr << "invalid parameters: " << e.report().summary() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
