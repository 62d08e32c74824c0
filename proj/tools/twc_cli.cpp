// twc: scenario generation, simulation and two-stage deployment optimization
// for emergency coverage planning.
//
// Exit codes: 0 success, 2 validation error, 3 runtime error. Errors are
// printed to stderr as a single JSON object.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twc/geometry.hpp"
#include "twc/json_io.hpp"
#include "twc/metric.hpp"
#include "twc/opt_ga.hpp"
#include "twc/opt_gvbs.hpp"
#include "twc/scenario_gen.hpp"
#include "twc/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct ValidationFailure : std::runtime_error {
  ValidationFailure(const std::string& what, std::vector<std::string> items = {},
                    std::string path = {})
      : std::runtime_error(what), violations(std::move(items)), field(std::move(path)) {}
  std::vector<std::string> violations;
  std::string field;
};

struct StageFailure : std::runtime_error {
  StageFailure(std::string stage_name, const std::string& what)
      : std::runtime_error(what), stage(std::move(stage_name)) {}
  std::string stage;
};

struct RunManifest {
  std::string scenario_path;
  std::vector<std::string> plan_paths;
  double cell_size = twc::CoverageGrid::kDefaultCellSize;
  std::string weight_family;  // empty keeps the scenario's weight
  std::optional<double> alpha;
  std::optional<double> horizon;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool force = false;
};

void add_common(CLI::App* cmd, RunManifest& m) {
  cmd->add_option("--scenario", m.scenario_path, "Scenario JSON")->required();
  cmd->add_option("--cell-size", m.cell_size, "Coverage lattice pitch in km")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--weight", m.weight_family, "Weight family override")
      ->check(CLI::IsMember({"constant", "exponential"}));
  cmd->add_option("--alpha", m.alpha, "Exponential weight rate (1/h); implies --weight exponential")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--horizon", m.horizon, "Horizon override in hours")->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", m.out_dir, "Output directory");
  cmd->add_flag("--force", m.force, "Overwrite existing outputs");
}

twc::Scenario load_checked_scenario(const RunManifest& m) {
  if (!fs::exists(m.scenario_path)) {
    throw twc::SchemaError("", "scenario file not found: " + m.scenario_path);
  }
  twc::Scenario s = twc::load_scenario(m.scenario_path);
  if (m.horizon) s.horizon = *m.horizon;
  if (m.alpha) {
    s.weight = twc::WeightFunction::exponential(*m.alpha);
  } else if (m.weight_family == "constant") {
    s.weight = twc::WeightFunction::constant();
  } else if (m.weight_family == "exponential") {
    throw ValidationFailure("--weight exponential needs --alpha");
  }
  if (auto problems = twc::validate(s); !problems.empty()) {
    throw ValidationFailure("invalid scenario " + m.scenario_path, std::move(problems));
  }
  return s;
}

twc::DeploymentPlan load_checked_plan(const std::string& path, const twc::Scenario& s) {
  if (!fs::exists(path)) throw twc::SchemaError("", "plan file not found: " + path);
  twc::DeploymentPlan plan = twc::load_plan(path);
  if (auto problems = twc::validate(plan, s); !problems.empty()) {
    throw ValidationFailure("invalid plan " + path, std::move(problems));
  }
  return plan;
}

class OutputDir {
 public:
  OutputDir(const std::string& dir, bool force) : dir_(dir), force_(force) {
    fs::create_directories(dir_);
  }
  fs::path claim(const std::string& name) const {
    fs::path p = dir_ / name;
    if (fs::exists(p) && !force_) {
      throw ValidationFailure("refusing to overwrite " + p.string() + " (pass --force)");
    }
    return p;
  }
  // All names are checked before anything is written.
  void claim_all(std::initializer_list<std::string> names) const {
    for (const auto& n : names) claim(n);
  }

 private:
  fs::path dir_;
  bool force_;
};

json hourly_samples(const twc::CoverageTrace& trace, double horizon) {
  json out = json::array();
  const auto hours = static_cast<int>(std::floor(horizon));
  for (int h = 0; h <= hours; ++h) {
    out.push_back({{"t", h}, {"fraction", trace.fraction_at(h)}});
  }
  return out;
}

json activity_json(const std::vector<twc::AerialActivity>& aerial) {
  json out = json::array();
  for (const auto& a : aerial) {
    out.push_back({{"kind", twc::to_string(a.kind)},
                   {"unit", a.unit},
                   {"arrival", a.arrival ? json(*a.arrival) : json(nullptr)},
                   {"first_active", a.first_active ? json(*a.first_active) : json(nullptr)}});
  }
  return out;
}

void write_events_csv(const fs::path& file, const std::vector<twc::EventRecord>& log) {
  std::ofstream out(file);
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "time,kind,unit,arrived_gvbs,active_fbs,inactive_fbs,active_dbs,inactive_dbs\n";
  for (const auto& r : log) {
    out << r.event.time << ',' << twc::to_string(r.event.kind) << ',' << r.event.unit << ','
        << r.arrived_gvbs << ',' << r.active_fbs << ',' << r.inactive_fbs << ',' << r.active_dbs
        << ',' << r.inactive_dbs << '\n';
  }
}

void write_trace_csv(const fs::path& file, const twc::CoverageTrace& trace) {
  std::ofstream out(file);
  trace.write_csv(out);
}

json config_json(const RunManifest& m, const twc::Scenario& s) {
  return {{"cell_size", m.cell_size}, {"horizon", s.horizon}, {"weight", twc::to_json(s.weight)}};
}

int cmd_simulate(const RunManifest& m) {
  if (m.plan_paths.size() != 1) throw ValidationFailure("simulate takes exactly one --plan");
  const twc::Scenario s = load_checked_scenario(m);
  const twc::DeploymentPlan plan = load_checked_plan(m.plan_paths.front(), s);
  const OutputDir out(m.out_dir, m.force);
  out.claim_all({"trace.csv", "events.csv", "summary.json"});

  const twc::CoverageGrid grid(s.disaster_radius, m.cell_size);
  const auto result = twc::simulate_detailed(s, plan, grid, {.record_log = true});
  const auto score = twc::time_weighted_coverage(result.trace, s.weight);

  write_trace_csv(out.claim("trace.csv"), result.trace);
  write_events_csv(out.claim("events.csv"), result.log);
  json summary = config_json(m, s);
  summary["c_w"] = score.c_w;
  summary["fraction_at"] = hourly_samples(result.trace, s.horizon);
  summary["aerial"] = activity_json(result.aerial);
  twc::write_json_file(out.claim("summary.json"), summary);
  std::cout << "c_w " << score.c_w << '\n';
  return 0;
}

struct GvbsFlags {
  std::optional<double> time_threshold;
  std::size_t max_evaluations = twc::GvbsSearchConfig{}.max_evaluations;
};

void add_gvbs_flags(CLI::App* cmd, GvbsFlags& f) {
  cmd->add_option("--time-threshold", f.time_threshold,
                  "GVBS travel-time cutoff in hours (default horizon/4)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-evaluations", f.max_evaluations, "Cap on enumerated assignments")
      ->check(CLI::PositiveNumber);
}

twc::GvbsSearchConfig gvbs_config(const GvbsFlags& f, const twc::Scenario& s) {
  auto cfg = twc::GvbsSearchConfig::defaults_for(s);
  if (f.time_threshold) cfg.time_threshold = *f.time_threshold;
  cfg.max_evaluations = f.max_evaluations;
  return cfg;
}

json gvbs_report(const twc::GvbsResult& r, const twc::GvbsSearchConfig& cfg) {
  return {{"c_w", r.score.c_w},
          {"evaluations", r.evaluations},
          {"truncated", r.truncated},
          {"time_threshold", cfg.time_threshold},
          {"max_evaluations", cfg.max_evaluations}};
}

twc::GvbsResult run_gvbs_stage(const twc::Scenario& s, const twc::GvbsSearchConfig& cfg,
                               const twc::CoverageGrid& grid) {
  try {
    auto r = twc::optimize_gvbs(s, cfg, grid);
    if (r.truncated) {
      std::cerr << "warning: GVBS enumeration stopped at " << r.evaluations
                << " evaluations; result is best-so-far\n";
    }
    return r;
  } catch (const std::exception& e) {
    throw StageFailure("gvbs", e.what());
  }
}

int cmd_optimize_gvbs(const RunManifest& m, const GvbsFlags& flags) {
  const twc::Scenario s = load_checked_scenario(m);
  const OutputDir out(m.out_dir, m.force);
  out.claim_all({"gvbs_plan.json", "gvbs_report.json"});

  const twc::CoverageGrid grid(s.disaster_radius, m.cell_size);
  const auto cfg = gvbs_config(flags, s);
  const auto r = run_gvbs_stage(s, cfg, grid);

  twc::write_json_file(out.claim("gvbs_plan.json"), twc::to_json(r.plan));
  json report = config_json(m, s);
  report["gvbs"] = gvbs_report(r, cfg);
  twc::write_json_file(out.claim("gvbs_report.json"), report);
  std::cout << "gvbs c_w " << r.score.c_w << " after " << r.evaluations << " evaluations\n";
  return 0;
}

struct GaFlags {
  twc::GaConfig cfg;
  bool no_heuristic = false;
};

void add_ga_flags(CLI::App* cmd, GaFlags& f) {
  auto& c = f.cfg;
  cmd->add_option("--population", c.population_size)->check(CLI::Range(2, 1'000'000));
  cmd->add_option("--generations", c.generations);
  cmd->add_option("--crossover-rate", c.crossover_rate)->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--mutation-rate", c.mutation_rate, "Per-gene rate (default 1/genome length)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--mutation-scale", c.mutation_scale)->check(CLI::NonNegativeNumber);
  cmd->add_option("--elite", c.elite_count);
  cmd->add_option("--tournament", c.tournament_size)->check(CLI::PositiveNumber);
  cmd->add_flag("--no-heuristic", f.no_heuristic, "Start from a purely random population");
}

int cmd_optimize(const RunManifest& m, const GvbsFlags& gflags, GaFlags gaflags) {
  const twc::Scenario s = load_checked_scenario(m);
  const OutputDir out(m.out_dir, m.force);
  out.claim_all({"plan.json", "report.json", "ga_history.csv", "trace.csv"});

  const twc::CoverageGrid grid(s.disaster_radius, m.cell_size);
  const auto gcfg = gvbs_config(gflags, s);
  const auto stage1 = run_gvbs_stage(s, gcfg, grid);

  gaflags.cfg.rng_seed = m.seed;
  gaflags.cfg.seed_heuristic = !gaflags.no_heuristic;
  twc::GaResult stage2;
  try {
    stage2 = twc::optimize_aerial(s, stage1.plan, gaflags.cfg, grid);
  } catch (const std::exception& e) {
    throw StageFailure("aerial", e.what());
  }
  const auto trace = twc::simulate(s, stage2.plan, grid);

  twc::write_json_file(out.claim("plan.json"), twc::to_json(stage2.plan));
  {
    std::ofstream hist(out.claim("ga_history.csv"));
    hist.precision(std::numeric_limits<double>::max_digits10);
    hist << "generation,best_c_w\n";
    for (std::size_t g = 0; g < stage2.history.size(); ++g) hist << g << ',' << stage2.history[g] << '\n';
  }
  write_trace_csv(out.claim("trace.csv"), trace);

  const auto& c = gaflags.cfg;
  json report = config_json(m, s);
  report["gvbs"] = gvbs_report(stage1, gcfg);
  report["aerial"] = {
      {"c_w", stage2.score.c_w},
      {"baseline_c_w", stage2.baseline.c_w},
      {"evaluations", stage2.evaluations},
      {"config",
       {{"population_size", c.population_size},
        {"generations", c.generations},
        {"crossover_rate", c.crossover_rate},
        {"mutation_rate", c.mutation_rate.value_or(
                              1.0 / static_cast<double>(std::max<std::size_t>(twc::genome_length(s), 1)))},
        {"mutation_scale", c.mutation_scale},
        {"elite_count", c.elite_count},
        {"tournament_size", c.tournament_size},
        {"rng_seed", c.rng_seed},
        {"seed_heuristic", c.seed_heuristic}}}};
  report["c_w"] = stage2.score.c_w;
  report["fraction_at"] = hourly_samples(trace, s.horizon);
  twc::write_json_file(out.claim("report.json"), report);
  std::cout << "gvbs c_w " << stage1.score.c_w << "\naerial c_w " << stage2.score.c_w << '\n';
  return 0;
}

int cmd_report(const RunManifest& m, double step) {
  if (m.plan_paths.empty()) throw ValidationFailure("report needs at least one --plan");
  const twc::Scenario s = load_checked_scenario(m);
  std::vector<twc::DeploymentPlan> plans;
  for (const auto& p : m.plan_paths) plans.push_back(load_checked_plan(p, s));
  const OutputDir out(m.out_dir, m.force);
  out.claim_all({"report.json", "coverage_samples.csv"});

  const twc::CoverageGrid grid(s.disaster_radius, m.cell_size);
  json report = config_json(m, s);
  report["plans"] = json::array();
  std::vector<twc::CoverageTrace> traces;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const auto r = twc::simulate_detailed(s, plans[i], grid);
    report["plans"].push_back({{"path", m.plan_paths[i]},
                               {"c_w", twc::time_weighted_coverage(r.trace, s.weight).c_w},
                               {"fraction_at", hourly_samples(r.trace, s.horizon)},
                               {"aerial", activity_json(r.aerial)}});
    traces.push_back(r.trace);
  }
  twc::write_json_file(out.claim("report.json"), report);

  std::ofstream csv(out.claim("coverage_samples.csv"));
  csv << 't';
  for (std::size_t i = 0; i < plans.size(); ++i) csv << ",plan" << i;
  csv << '\n';
  const auto steps = static_cast<long>(std::floor(s.horizon / step + 1e-9));
  for (long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * step;
    csv << t;
    for (const auto& tr : traces) csv << ',' << tr.fraction_at(t);
    csv << '\n';
  }
  return 0;
}

struct GenerateFlags {
  twc::ScenarioParams params;
  bool large = false;
  std::string out;
  std::optional<double> alpha;
  std::optional<std::size_t> fbs, dbs;
  std::optional<double> horizon;
  bool force = false;
};

int cmd_generate(GenerateFlags f) {
  if (f.large) {
    const auto seed = f.params.seed;
    const auto keep = f.params;
    f.params = twc::ScenarioParams::large();
    f.params.seed = seed;
    f.params.tbs = keep.tbs;
    f.params.gvbs = keep.gvbs;
    f.params.gvbs_locations = keep.gvbs_locations;
    f.params.aerial_centers = keep.aerial_centers;
  }
  if (f.fbs) f.params.fbs = *f.fbs;
  if (f.dbs) f.params.dbs = *f.dbs;
  if (f.horizon) f.params.horizon = *f.horizon;
  if (f.alpha) f.params.weight = twc::WeightFunction::exponential(*f.alpha);
  if (fs::exists(f.out) && !f.force) {
    throw ValidationFailure("refusing to overwrite " + f.out + " (pass --force)");
  }
  twc::Scenario s;
  try {
    s = twc::generate_scenario(f.params);
  } catch (const std::invalid_argument& e) {
    throw ValidationFailure(e.what());
  }
  if (const auto parent = fs::path(f.out).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  twc::write_json_file(f.out, twc::to_json(s));
  return 0;
}

void print_error(const char* kind, const std::string& message, const json& extra = json::object()) {
  json err = extra;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage planning for integrated aerial and ground emergency networks"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate-scenario", "Write a seeded synthetic scenario");
  generate->add_option("--out", gen.out, "Scenario JSON to write")->required();
  generate->add_option("--tbs", gen.params.tbs, "Sustained TBS count");
  generate->add_option("--gvbs", gen.params.gvbs, "GVBS count");
  generate->add_option("--locations", gen.params.gvbs_locations, "Reachable GVBS locations");
  generate->add_option("--fbs", gen.fbs, "FBS count");
  generate->add_option("--dbs", gen.dbs, "DBS count");
  generate->add_option("--centers", gen.params.aerial_centers, "Aerial depots");
  generate->add_option("--horizon", gen.horizon, "Horizon in hours")->check(CLI::PositiveNumber);
  generate->add_option("--alpha", gen.alpha, "Exponential weight rate")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.params.seed, "Placement seed");
  generate->add_flag("--large", gen.large, "50 FBS / 20 DBS / 12 h preset");
  generate->add_flag("--force", gen.force, "Overwrite an existing file");

  RunManifest sim_m;
  auto* simulate = app.add_subcommand("simulate", "Coverage trace and C_w of one plan");
  add_common(simulate, sim_m);
  simulate->add_option("--plan", sim_m.plan_paths, "Plan JSON")->required()->expected(1);

  RunManifest gv_m;
  GvbsFlags gv_flags;
  auto* optimize_gvbs = app.add_subcommand("optimize-gvbs", "Stage one: GVBS placement only");
  add_common(optimize_gvbs, gv_m);
  add_gvbs_flags(optimize_gvbs, gv_flags);

  RunManifest opt_m;
  GvbsFlags opt_gflags;
  GaFlags opt_gaflags;
  auto* optimize = app.add_subcommand("optimize", "GVBS enumeration followed by the aerial GA");
  add_common(optimize, opt_m);
  add_gvbs_flags(optimize, opt_gflags);
  add_ga_flags(optimize, opt_gaflags);
  optimize->add_option("--seed", opt_m.seed, "GA seed");

  RunManifest rep_m;
  double step = 0.05;
  auto* report = app.add_subcommand("report", "Figure data for one or more plans");
  add_common(report, rep_m);
  report->add_option("--plan", rep_m.plan_paths, "Plan JSON (repeatable)")->required();
  report->add_option("--step", step, "Sampling step in hours")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitValidation;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*simulate) return cmd_simulate(sim_m);
    if (*optimize_gvbs) return cmd_optimize_gvbs(gv_m, gv_flags);
    if (*optimize) return cmd_optimize(opt_m, opt_gflags, opt_gaflags);
    if (*report) return cmd_report(rep_m, step);
  } catch (const twc::SchemaError& e) {
    print_error("schema", e.what(), {{"path", e.path()}});
    return kExitValidation;
  } catch (const ValidationFailure& e) {
    print_error("validation", e.what(), {{"violations", e.violations}});
    return kExitValidation;
  } catch (const StageFailure& e) {
    print_error("runtime", e.what(), {{"stage", e.stage}});
    return kExitRuntime;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return kExitRuntime;
  }
  return 0;
}
