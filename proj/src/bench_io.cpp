#include "hrs/bench_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "hrs/exact_oracle.hpp"

namespace hrs {

std::string format_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(ParseFault::BadValue, "bad numeric value '" + tok + "' in " + where);
  }
}

struct RawNode {
  double x = 0.0, y = 0.0, demand = 0.0;
  bool has_coord = false, has_demand = false;
};

}  // namespace

Instance parse_instance_text(const std::string& text, const std::string& name_hint) {
  std::istringstream in(text);
  std::string line;

  std::map<std::string, std::string> headers;
  std::map<int, RawNode> nodes;
  std::vector<int> depot_ids;
  int dimension = -1;
  bool saw_coords = false, saw_demands = false, saw_depot = false;

  enum class Section { None, Coords, Demands, Depot };
  Section section = Section::None;

  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t == "EOF") break;
    if (t == "NODE_COORD_SECTION") {
      section = Section::Coords;
      saw_coords = true;
      continue;
    }
    if (t == "DEMAND_SECTION") {
      section = Section::Demands;
      saw_demands = true;
      continue;
    }
    if (t == "DEPOT_SECTION") {
      section = Section::Depot;
      saw_depot = true;
      continue;
    }
    if (section == Section::None) {
      const auto colon = t.find(':');
      if (colon == std::string::npos)
        throw ParseError(ParseFault::BadValue, "unrecognized header line: " + t);
      headers[trim(t.substr(0, colon))] = trim(t.substr(colon + 1));
      continue;
    }
    std::istringstream ls(t);
    if (section == Section::Coords) {
      std::string id_tok, x_tok, y_tok;
      if (!(ls >> id_tok >> x_tok >> y_tok))
        throw ParseError(ParseFault::InconsistentDimension,
                         "NODE_COORD_SECTION line with fewer than 3 fields: " + t);
      const int id = static_cast<int>(parse_number(id_tok, "NODE_COORD_SECTION"));
      RawNode& node = nodes[id];
      if (node.has_coord)
        throw ParseError(ParseFault::DuplicateNode,
                         "duplicate node id " + std::to_string(id) + " in NODE_COORD_SECTION");
      node.x = parse_number(x_tok, "NODE_COORD_SECTION");
      node.y = parse_number(y_tok, "NODE_COORD_SECTION");
      node.has_coord = true;
    } else if (section == Section::Demands) {
      std::string id_tok, d_tok;
      if (!(ls >> id_tok >> d_tok))
        throw ParseError(ParseFault::InconsistentDimension,
                         "DEMAND_SECTION line with fewer than 2 fields: " + t);
      const int id = static_cast<int>(parse_number(id_tok, "DEMAND_SECTION"));
      RawNode& node = nodes[id];
      if (node.has_demand)
        throw ParseError(ParseFault::DuplicateNode,
                         "duplicate node id " + std::to_string(id) + " in DEMAND_SECTION");
      node.demand = parse_number(d_tok, "DEMAND_SECTION");
      node.has_demand = true;
    } else {
      const int id = static_cast<int>(parse_number(t, "DEPOT_SECTION"));
      if (id == -1) {
        section = Section::None;
      } else {
        depot_ids.push_back(id);
      }
    }
  }

  if (!headers.contains("DIMENSION"))
    throw ParseError(ParseFault::MissingSection, "missing DIMENSION header");
  dimension = static_cast<int>(parse_number(headers["DIMENSION"], "DIMENSION"));
  if (dimension < 2)
    throw ParseError(ParseFault::BadValue, "DIMENSION must cover a depot and a customer");
  if (!headers.contains("CAPACITY"))
    throw ParseError(ParseFault::MissingSection, "missing CAPACITY header");
  if (!headers.contains("EDGE_WEIGHT_TYPE") || headers["EDGE_WEIGHT_TYPE"] != "EUC_2D")
    throw ParseError(ParseFault::MissingSection,
                     "missing or unsupported EDGE_WEIGHT_TYPE (need EUC_2D)");
  if (!saw_coords) throw ParseError(ParseFault::MissingSection, "missing NODE_COORD_SECTION");
  if (!saw_demands) throw ParseError(ParseFault::MissingSection, "missing DEMAND_SECTION");
  if (!saw_depot || depot_ids.empty())
    throw ParseError(ParseFault::MissingSection, "missing DEPOT_SECTION");
  if (depot_ids.size() != 1)
    throw ParseError(ParseFault::BadValue, "expected exactly one depot id");

  std::size_t with_coord = 0, with_demand = 0;
  for (const auto& [id, node] : nodes) {
    if (id < 1 || id > dimension)
      throw ParseError(ParseFault::InconsistentDimension,
                       "node id " + std::to_string(id) + " outside 1..DIMENSION");
    with_coord += node.has_coord;
    with_demand += node.has_demand;
  }
  if (with_coord != static_cast<std::size_t>(dimension))
    throw ParseError(ParseFault::InconsistentDimension,
                     "NODE_COORD_SECTION lists " + std::to_string(with_coord) + " of " +
                         std::to_string(dimension) + " nodes");
  if (with_demand != static_cast<std::size_t>(dimension))
    throw ParseError(ParseFault::InconsistentDimension,
                     "DEMAND_SECTION lists " + std::to_string(with_demand) + " of " +
                         std::to_string(dimension) + " nodes");

  const int depot_id = depot_ids.front();
  if (!nodes.contains(depot_id))
    throw ParseError(ParseFault::BadValue, "depot id not among nodes");

  Instance inst;
  inst.name = headers.contains("NAME") ? headers["NAME"] : name_hint;
  inst.capacity = parse_number(headers["CAPACITY"], "CAPACITY");
  if (headers.contains("DISTANCE"))
    inst.max_duration = parse_number(headers["DISTANCE"], "DISTANCE");
  const double service =
      headers.contains("SERVICE_TIME") ? parse_number(headers["SERVICE_TIME"], "SERVICE_TIME")
                                       : 0.0;
  if (headers.contains("VEHICLES"))
    inst.fleet_size = static_cast<int>(parse_number(headers["VEHICLES"], "VEHICLES"));

  inst.depot_x = nodes[depot_id].x;
  inst.depot_y = nodes[depot_id].y;
  inst.file_ids.push_back(depot_id);
  for (const auto& [id, node] : nodes) {
    if (id == depot_id) continue;
    inst.customers.push_back({node.x, node.y, node.demand, service});
    inst.file_ids.push_back(id);
  }
  inst.build_distance_matrix();
  return inst;
}

Instance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(ParseFault::MissingSection, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str(), path.stem().string());
}

std::string instance_to_text(const Instance& inst) {
  std::ostringstream out;
  const std::size_t dim = inst.num_customers() + 1;
  out << "NAME : " << (inst.name.empty() ? "instance" : inst.name) << "\n";
  out << "TYPE : CVRP\n";
  out << "DIMENSION : " << dim << "\n";
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "CAPACITY : " << format_sig(inst.capacity) << "\n";
  if (inst.has_duration_limit()) out << "DISTANCE : " << format_sig(inst.max_duration) << "\n";
  if (!inst.customers.empty() && inst.customers.front().service_time > 0.0)
    out << "SERVICE_TIME : " << format_sig(inst.customers.front().service_time) << "\n";
  if (inst.fleet_size > 0) out << "VEHICLES : " << inst.fleet_size << "\n";
  out << "NODE_COORD_SECTION\n";
  out << inst.file_ids[0] << " " << format_sig(inst.depot_x) << " " << format_sig(inst.depot_y)
      << "\n";
  for (std::size_t i = 0; i < inst.num_customers(); ++i) {
    out << inst.file_ids[i + 1] << " " << format_sig(inst.customers[i].x) << " "
        << format_sig(inst.customers[i].y) << "\n";
  }
  out << "DEMAND_SECTION\n";
  out << inst.file_ids[0] << " 0\n";
  for (std::size_t i = 0; i < inst.num_customers(); ++i) {
    out << inst.file_ids[i + 1] << " " << format_sig(inst.customers[i].demand) << "\n";
  }
  out << "DEPOT_SECTION\n" << inst.file_ids[0] << "\n-1\nEOF\n";
  return out.str();
}

void write_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_text(inst);
}

std::string encode_routes(const VrpSolution& s, const Instance& inst) {
  std::ostringstream out;
  for (std::size_t r = 0; r < s.routes.size(); ++r) {
    if (r > 0) out << "|";
    for (std::size_t i = 0; i < s.routes[r].size(); ++i) {
      if (i > 0) out << " ";
      out << inst.file_ids[static_cast<std::size_t>(s.routes[r][i])];
    }
  }
  return out.str();
}

void write_archive_csv(const std::filesystem::path& path,
                       const std::vector<ArchiveRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "f1,f2,solution\n";
  for (const ArchiveRow& row : rows) {
    out << format_sig(row.point.f1) << "," << format_sig(row.point.f2) << "," << row.solution
        << "\n";
  }
}

std::vector<ArchiveRow> read_archive_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<ArchiveRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("f1,", 0) == 0) continue;  // header
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw std::runtime_error("malformed archive row: " + line);
    ArchiveRow row;
    row.point.f1 = parse_number(trim(line.substr(0, c1)), "archive csv");
    row.point.f2 = parse_number(trim(line.substr(c1 + 1, c2 - c1 - 1)), "archive csv");
    row.solution = line.substr(c2 + 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_trace_csv(const std::filesystem::path& path, const RunTrace& trace,
                     bool with_timing) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "step,c,f1,f2,feasible,elapsed_ms\n";
  for (const TraceEntry& e : trace.entries) {
    out << e.step << "," << format_sig(e.c) << ",";
    if (e.outcome) {
      out << format_sig(e.outcome->f1) << "," << format_sig(e.outcome->f2) << ",1,";
    } else {
      out << "nan,nan,0,";
    }
    out << (with_timing ? format_sig(e.elapsed_ms) : "0") << "\n";
  }
}

RunConfig make_run_config(const Instance& inst, const HgsConfig& hgs, const RunConfig& base) {
  RunConfig cfg = base;
  cfg.initial_budget = hgs.i0;
  cfg.step_budget = hgs.i_n;
  if (cfg.f1_max <= 0.0) {
    double max_dist = 0.0;
    for (const auto& row : inst.dist) {
      for (double d : row) max_dist = std::max(max_dist, d);
    }
    double service = 0.0;
    for (const Customer& cust : inst.customers) {
      if (inst.has_duration_limit()) service += cust.service_time;
    }
    const double n = static_cast<double>(inst.num_customers());
    const double m = inst.fleet_size > 0 ? inst.fleet_size : n;
    cfg.f1_max = (n + m) * max_dist + service;
  }
  return cfg;
}

namespace {

std::vector<ArchiveRow> archive_rows(const RunResult<VrpSolution>& result,
                                     const Instance& inst, bool two_opt_filter) {
  std::vector<ArchiveRow> rows;
  for (const ArchiveEntry& e : result.archive.entries()) {
    const VrpSolution& sol = result.solutions[e.solution_id];
    if (two_opt_filter && !is_two_optimal(sol, inst)) continue;
    rows.push_back({e.point, encode_routes(sol, inst)});
  }
  return rows;
}

std::string algo_name(Algorithm a) {
  switch (a) {
    case Algorithm::Hrs: return "hrs";
    case Algorithm::Ecm: return "ecm";
    case Algorithm::Oracle: return "oracle";
  }
  return "unknown";
}

}  // namespace

RunArtifacts run_benchmark(const RunSpec& spec) {
  Instance inst = parse_instance(spec.instance_path);
  if (spec.fleet_size) inst.fleet_size = *spec.fleet_size;
  if (spec.fleet == FleetConvention::Fixed && inst.fleet_size < 1)
    throw std::runtime_error("fixed-fleet run needs a fleet size (--fixed-fleet)");
  const RunConfig cfg = make_run_config(inst, spec.hgs, spec.run);

  std::optional<std::vector<ObjectivePoint>> ref_points;
  if (spec.ref_set_path) {
    std::vector<ObjectivePoint> pts;
    for (const ArchiveRow& row : read_archive_csv(*spec.ref_set_path))
      pts.push_back(row.point);
    ref_points = std::move(pts);
  }

  std::filesystem::create_directories(spec.out_dir);
  RunArtifacts artifacts;
  const std::string stem = spec.instance_path.stem().string();
  artifacts.indicators_file = spec.out_dir / (stem + "_" + algo_name(spec.algorithm) +
                                              "_indicators.csv");
  std::ofstream ind(artifacts.indicators_file);
  if (!ind) throw std::runtime_error("cannot write " + artifacts.indicators_file.string());
  ind << "instance,run,hv_pct,epsilon,cardinality,cpu_ms\n";

  for (int rep = 0; rep < spec.repetitions; ++rep) {
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(rep);
    const auto t0 = std::chrono::steady_clock::now();

    std::vector<ArchiveRow> rows;
    RunTrace trace;
    if (spec.algorithm == Algorithm::Oracle) {
      const auto front = enumerate_pareto(inst, spec.fleet);
      for (const FrontPoint& fp : front) {
        if (spec.two_opt_filter && !is_two_optimal(fp.solution, inst)) continue;
        rows.push_back({fp.point, encode_routes(fp.solution, inst)});
      }
      TraceEntry entry;
      entry.step = 1;
      if (!front.empty()) entry.outcome = front.front().point;
      trace.entries.push_back(entry);
      trace.snapshots.push_back({});
    } else {
      HgsSolver solver(inst, spec.hgs, spec.fleet, seed);
      RunResult<VrpSolution> result = spec.algorithm == Algorithm::Hrs
                                          ? run_hrs(solver, cfg)
                                          : run_classical_ecm(solver, cfg);
      rows = archive_rows(result, inst, spec.two_opt_filter);
      trace = std::move(result.trace);
    }
    const double cpu_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();

    const std::string tag = stem + "_" + algo_name(spec.algorithm) + "_seed" +
                            std::to_string(seed);
    const auto archive_path = spec.out_dir / (tag + ".archive.csv");
    const auto trace_path = spec.out_dir / (tag + ".trace.csv");
    write_archive_csv(archive_path, rows);
    write_trace_csv(trace_path, trace, spec.trace_timing);
    artifacts.archive_files.push_back(archive_path);
    artifacts.trace_files.push_back(trace_path);

    std::vector<ObjectivePoint> approx;
    for (const ArchiveRow& row : rows) approx.push_back(row.point);
    ind << stem << "," << seed << ",";
    if (ref_points && !ref_points->empty() && !approx.empty()) {
      const IndicatorReport report = indicator_report(approx, *ref_points);
      ind << format_sig(report.hypervolume_pct) << "," << format_sig(report.unary_epsilon)
          << "," << report.cardinality << ",";
    } else {
      // No reference set: only the absolute hypervolume is defined, which the
      // CLI reports on stdout; the percentage and epsilon columns stay empty.
      ind << "nan,nan," << approx.size() << ",";
    }
    ind << (spec.trace_timing ? format_sig(cpu_ms) : "0") << "\n";
  }
  return artifacts;
}

void merge_reference_sets(const std::vector<std::filesystem::path>& inputs,
                          const std::filesystem::path& output) {
  if (inputs.empty()) throw std::runtime_error("merge needs at least one input file");
  std::vector<ArchiveRow> all;
  for (const auto& path : inputs) {
    for (ArchiveRow& row : read_archive_csv(path)) all.push_back(std::move(row));
  }
  std::vector<ArchiveRow> front;
  for (ArchiveRow& cand : all) {
    bool rejected = false;
    for (const ArchiveRow& kept : front) {
      if (dominates(kept.point, cand.point, 0.0) || kept.point == cand.point) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    std::erase_if(front, [&](const ArchiveRow& kept) {
      return dominates(cand.point, kept.point, 0.0);
    });
    front.push_back(std::move(cand));
  }
  std::sort(front.begin(), front.end(), [](const ArchiveRow& a, const ArchiveRow& b) {
    return a.point.f1 < b.point.f1 || (a.point.f1 == b.point.f1 && a.point.f2 < b.point.f2);
  });
  write_archive_csv(output, front);
}

}  // namespace hrs
