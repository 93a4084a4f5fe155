#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrs/hgs_solver.hpp"
#include "hrs/hrs_core.hpp"
#include "hrs/metrics.hpp"
#include "hrs/vrp_model.hpp"

namespace hrs {

/// Parse failures carry which part of the file was at fault.
enum class ParseFault {
  MissingSection,
  InconsistentDimension,
  DuplicateNode,
  BadValue,
};

struct ParseError : std::runtime_error {
  ParseFault fault;
  ParseError(ParseFault f, const std::string& msg) : std::runtime_error(msg), fault(f) {}
};

/// Reads a TSPLIB-style CVRP file (EUC_2D) with optional DISTANCE and
/// SERVICE_TIME headers for duration-limited instances.
Instance parse_instance(const std::filesystem::path& path);
Instance parse_instance_text(const std::string& text, const std::string& name_hint = "");

/// Writes the same dialect back; numbers carry 12 significant digits.
void write_instance(const Instance& inst, const std::filesystem::path& path);
std::string instance_to_text(const Instance& inst);

/// Archive row encoding: routes separated by '|', customers by spaces,
/// using the instance file's 1-based node ids.
std::string encode_routes(const VrpSolution& s, const Instance& inst);

struct ArchiveRow {
  ObjectivePoint point;
  std::string solution;  // encoded routes, possibly empty
};

void write_archive_csv(const std::filesystem::path& path, const std::vector<ArchiveRow>& rows);
std::vector<ArchiveRow> read_archive_csv(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace,
                     bool with_timing);

enum class Algorithm { Hrs, Ecm, Oracle };

struct RunSpec {
  std::filesystem::path instance_path;
  Algorithm algorithm = Algorithm::Hrs;
  std::uint64_t seed = 1;
  int repetitions = 1;
  FleetConvention fleet = FleetConvention::Fixed;
  std::optional<int> fleet_size;  // overrides the instance's fleet when set
  bool two_opt_filter = false;
  HgsConfig hgs;
  RunConfig run;
  std::optional<std::filesystem::path> ref_set_path;
  std::filesystem::path out_dir = ".";
  bool trace_timing = false;  // off by default so outputs are reproducible
};

struct RunArtifacts {
  std::vector<std::filesystem::path> archive_files;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path indicators_file;
};

/// Executes `repetitions` runs with seeds seed..seed+reps-1, writing one
/// archive CSV and one trace CSV per run plus an indicator row per run. With
/// a reference set the report carries hypervolume percentage and unary
/// epsilon; without one it downgrades to absolute hypervolume.
RunArtifacts run_benchmark(const RunSpec& spec);

/// Non-dominated union of several archive CSV files, written back in the
/// same format.
void merge_reference_sets(const std::vector<std::filesystem::path>& inputs,
                          const std::filesystem::path& output);

/// RunConfig with instance-derived bounds filled in: f1_max defaults to a
/// valid route-plan cost bound, budgets come from the HGS config.
RunConfig make_run_config(const Instance& inst, const HgsConfig& hgs, const RunConfig& base);

std::string format_sig(double value);  // 12 significant digits

}  // namespace hrs
