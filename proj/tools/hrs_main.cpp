#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hrs/bench_io.hpp"
#include "hrs/exact_oracle.hpp"
#include "hrs/metrics.hpp"

namespace {

// key=value overrides for the solver and driver defaults
void apply_config_file(const std::filesystem::path& path, hrs::RunSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key.empty() || value.empty()) continue;
    const double v = std::stod(value);
    if (key == "mu") spec.hgs.mu = static_cast<int>(v);
    else if (key == "lambda") spec.hgs.lambda = static_cast<int>(v);
    else if (key == "el") spec.hgs.elite = static_cast<int>(v);
    else if (key == "xi_ref") spec.hgs.xi_ref = v;
    else if (key == "n_close") spec.hgs.n_close = static_cast<int>(v);
    else if (key == "p_rep") spec.hgs.p_rep = v;
    else if (key == "g") spec.hgs.granularity = static_cast<int>(v);
    else if (key == "i0") spec.hgs.i0 = static_cast<long>(v);
    else if (key == "in") spec.hgs.i_n = static_cast<long>(v);
    else if (key == "n_max") spec.run.n_max = static_cast<int>(v);
    else if (key == "tau") spec.run.tau = v;
    else if (key == "f1_max") spec.run.f1_max = v;
    else if (key == "f2_min") spec.run.f2_min = v;
    else if (key == "epsilon") spec.run.classical_epsilon = v;
    else if (key == "ecm_k") spec.run.ecm_safety_multiplier = static_cast<int>(v);
    else if (key == "normalized_area") spec.run.normalized_area_selection = v != 0.0;
    else throw std::runtime_error("unknown config key: " + key);
  }
}

void add_run_options(CLI::App* cmd, hrs::RunSpec& spec, std::string& instance,
                     std::string& ref_set, std::string& out_dir, std::string& config,
                     int& fixed_fleet, bool& free_fleet, bool& no_harvest) {
  cmd->add_option("--instance", instance, "instance file (TSPLIB CVRP dialect)")->required();
  cmd->add_option("--seed", spec.seed, "base random seed");
  cmd->add_option("--reps", spec.repetitions, "repetitions, seeds seed..seed+reps-1");
  cmd->add_option("--n-max", spec.run.n_max, "sub-problem budget");
  cmd->add_option("--fixed-fleet", fixed_fleet, "fleet size; unused vehicles count as zero workload");
  cmd->add_flag("--free-fleet", free_fleet, "vehicle count free; empty routes ignored");
  cmd->add_flag("--two-opt-filter", spec.two_opt_filter,
                "only 2-optimal solutions enter the archive output");
  cmd->add_flag("--no-harvest", no_harvest, "archive only each sub-problem's cost-optimum");
  cmd->add_option("--ref-set", ref_set, "reference set CSV for quality indicators");
  cmd->add_option("--out-dir", out_dir, "output directory");
  cmd->add_option("--config", config, "key=value overrides of the default parameters");
  cmd->add_flag("--trace-timing", spec.trace_timing,
                "record wall-clock times in outputs (breaks byte-reproducibility)");
}

int finish_run(hrs::RunSpec& spec, const std::string& instance, const std::string& ref_set,
               const std::string& out_dir, const std::string& config, int fixed_fleet,
               bool free_fleet, bool no_harvest) {
  spec.instance_path = instance;
  spec.out_dir = out_dir;
  if (!config.empty()) apply_config_file(config, spec);
  if (!ref_set.empty()) spec.ref_set_path = ref_set;
  if (free_fleet && fixed_fleet > 0)
    throw std::runtime_error("choose either --fixed-fleet or --free-fleet");
  spec.fleet = free_fleet ? hrs::FleetConvention::Free : hrs::FleetConvention::Fixed;
  if (fixed_fleet > 0) spec.fleet_size = fixed_fleet;
  spec.run.harvesting = !no_harvest;

  const hrs::RunArtifacts artifacts = hrs::run_benchmark(spec);
  for (const auto& path : artifacts.archive_files) std::cout << path.string() << "\n";
  std::cout << artifacts.indicators_file.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-objective vehicle routing by rectangle splitting"};
  app.require_subcommand(1);

  hrs::RunSpec spec;
  std::string instance, ref_set, out_dir = ".", config;
  int fixed_fleet = 0;
  bool free_fleet = false, no_harvest = false;

  CLI::App* solve = app.add_subcommand("solve", "rectangle-splitting run (HRS)");
  add_run_options(solve, spec, instance, ref_set, out_dir, config, fixed_fleet, free_fleet,
                  no_harvest);

  CLI::App* ecm = app.add_subcommand("ecm", "classical epsilon-constraint run");
  add_run_options(ecm, spec, instance, ref_set, out_dir, config, fixed_fleet, free_fleet,
                  no_harvest);
  ecm->add_option("--epsilon", spec.run.classical_epsilon, "constraint step size");

  CLI::App* oracle = app.add_subcommand("oracle", "exact front by enumeration (desk scale)");
  add_run_options(oracle, spec, instance, ref_set, out_dir, config, fixed_fleet, free_fleet,
                  no_harvest);

  CLI::App* metrics = app.add_subcommand("metrics", "quality indicators for an archive CSV");
  std::string approx_path, metrics_ref;
  metrics->add_option("approx", approx_path, "archive CSV to evaluate")->required();
  metrics->add_option("--ref-set", metrics_ref, "reference set CSV")->required();

  CLI::App* merge = app.add_subcommand("merge-refs", "non-dominated union of archive CSVs");
  std::vector<std::string> merge_inputs;
  std::string merge_out = "merged_refs.csv";
  merge->add_option("inputs", merge_inputs, "archive CSV files")->required();
  merge->add_option("--out", merge_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      spec.algorithm = hrs::Algorithm::Hrs;
      return finish_run(spec, instance, ref_set, out_dir, config, fixed_fleet, free_fleet,
                        no_harvest);
    }
    if (ecm->parsed()) {
      spec.algorithm = hrs::Algorithm::Ecm;
      return finish_run(spec, instance, ref_set, out_dir, config, fixed_fleet, free_fleet,
                        no_harvest);
    }
    if (oracle->parsed()) {
      spec.algorithm = hrs::Algorithm::Oracle;
      return finish_run(spec, instance, ref_set, out_dir, config, fixed_fleet, free_fleet,
                        no_harvest);
    }
    if (metrics->parsed()) {
      std::vector<hrs::ObjectivePoint> approx, ref;
      for (const auto& row : hrs::read_archive_csv(approx_path)) approx.push_back(row.point);
      for (const auto& row : hrs::read_archive_csv(metrics_ref)) ref.push_back(row.point);
      const hrs::IndicatorReport report = hrs::indicator_report(approx, ref);
      std::cout << "hv_abs=" << hrs::format_sig(report.hypervolume_abs)
                << " hv_pct=" << hrs::format_sig(report.hypervolume_pct)
                << " epsilon=" << hrs::format_sig(report.unary_epsilon)
                << " cardinality=" << report.cardinality << "\n";
      return 0;
    }
    if (merge->parsed()) {
      std::vector<std::filesystem::path> inputs(merge_inputs.begin(), merge_inputs.end());
      hrs::merge_reference_sets(inputs, merge_out);
      std::cout << merge_out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
