#pragma once

#include <chrono>
#include <concepts>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hrs/objective_space.hpp"

namespace hrs {

/// One epsilon-constraint sub-problem: minimize f1 subject to f2 <= f2_limit.
struct SolverRequest {
  double f2_limit = std::numeric_limits<double>::infinity();
  StateHandle warm_state;  // null = cold start
  long iteration_budget = 1;
};

template <typename Sol>
struct SolverResult {
  Sol solution;
  ObjectivePoint point;
};

/// `best` is the cost-optimum found for the request (absent when the solver
/// found nothing satisfying the constraint). `harvested` carries every other
/// feasible solution the solver is willing to submit to the archive.
template <typename Sol>
struct SolverResponse {
  std::optional<SolverResult<Sol>> best;
  std::vector<SolverResult<Sol>> harvested;
  StateHandle state;

  bool feasible() const { return best.has_value(); }
};

template <typename S>
concept SubproblemSolver = requires(S s, const SolverRequest& req) {
  typename S::Solution;
  { s.solve(req) } -> std::same_as<SolverResponse<typename S::Solution>>;
};

struct RunConfig {
  int n_max = 50;            // sub-problem budget; the unconstrained solve counts as #1
  double f1_max = 0.0;       // upper bound on f1; must be set before running
  double f2_min = 0.0;       // lower bound on f2
  bool harvesting = true;
  double classical_epsilon = 0.01;
  double tau = 1e-6;         // dominance tolerance, raw objective units
  long initial_budget = 10000;  // solver budget for the unconstrained sub-problem
  long step_budget = 500;       // solver budget for every later sub-problem
  int ecm_safety_multiplier = 100;  // classical ECM stops after n_max * this
  bool normalized_area_selection = false;
};

struct TraceEntry {
  int step = 0;  // 1-based sub-problem index
  double c = std::numeric_limits<double>::infinity();
  std::optional<ObjectivePoint> outcome;  // absent = infeasible sub-problem
  double elapsed_ms = 0.0;
  int snapshot = -1;  // index into RunTrace::snapshots
};

struct RunTrace {
  std::vector<TraceEntry> entries;
  // Points of the returned archive after each sub-problem, for anytime
  // quality analysis.
  std::vector<std::vector<ObjectivePoint>> snapshots;
};

/// Rectangle bookkeeping of one feasibility outcome, reported so callers can
/// audit area progress and containment.
struct UpdateOutcome {
  bool accepted = false;
  std::vector<Rectangle> added;
  std::vector<Rectangle> removed;
};

/// Applies the splitting update rules after a sub-problem solved with
/// constraint `c` on the rectangle at `split_index`.
///
/// Infeasible or dominated outcome: the explored lower half of the split
/// rectangle is discarded (no new rectangle). A feasible non-dominated point
/// x enters the archive and replaces the rectangle straddling its f1 value
/// and the rectangle straddling its f2 value by shrunken children; no child
/// ever exceeds the bounds of the rectangle it replaces. Rectangles whose
/// upper-left vertex x dominates are removed.
UpdateOutcome update_after_solve(ParetoArchive& archive, RectangleSet& rects,
                                 std::size_t split_index,
                                 const std::optional<ObjectivePoint>& x, double c,
                                 std::size_t solution_id, StateHandle state);

/// State handle of the archive entry whose f2 is closest to the constraint c;
/// ties broken by smaller f1. The archive must be non-empty.
StateHandle nearest_state(const ParetoArchive& archive, double c);

template <typename Sol>
struct DriverState {
  // Cost-optima only: this archive steers rectangle updates and warm-start
  // selection, so runs with and without harvesting explore identically.
  ParetoArchive driver;
  // The archive handed back to the caller; includes harvested solutions.
  ParetoArchive result;
  RectangleSet rects;
  std::vector<Sol> solutions;  // archive solution_ids index into this store
  RunTrace trace;
  int subproblems = 0;
  double area_scale_f1 = 1.0;
  double area_scale_f2 = 1.0;

  explicit DriverState(double tau) : driver(tau), result(tau) {}
};

template <typename Sol>
struct RunResult {
  ParetoArchive archive;
  std::vector<Sol> solutions;
  RunTrace trace;
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

template <typename Sol>
void record_step(DriverState<Sol>& st, double c, const std::optional<ObjectivePoint>& outcome,
                 double elapsed_ms) {
  st.trace.snapshots.push_back(st.result.points());
  st.trace.entries.push_back({st.subproblems, c, outcome, elapsed_ms,
                              static_cast<int>(st.trace.snapshots.size()) - 1});
}

template <typename Sol>
void harvest_into_result(DriverState<Sol>& st, std::vector<SolverResult<Sol>>& harvested,
                         const StateHandle& state) {
  for (SolverResult<Sol>& h : harvested) {
    const std::size_t id = st.solutions.size();
    if (st.result.insert(h.point, id, state).accepted) {
      st.solutions.push_back(std::move(h.solution));
    }
  }
}

}  // namespace detail

/// Solves the unconstrained sub-problem and sets up the initial rectangle
/// spanning from the cost-optimum to the (f1_max, f2_min) bound corner.
/// Throws std::runtime_error if the unconstrained solve fails.
template <SubproblemSolver S>
DriverState<typename S::Solution> hrs_initialize(S& solver, const RunConfig& cfg) {
  if (!(cfg.f1_max > 0.0)) throw std::invalid_argument("RunConfig::f1_max must be set");
  DriverState<typename S::Solution> st(cfg.tau);

  SolverRequest req;
  req.iteration_budget = cfg.initial_budget;
  const auto t0 = std::chrono::steady_clock::now();
  SolverResponse<typename S::Solution> resp = solver.solve(req);
  const double ms = detail::ms_since(t0);
  st.subproblems = 1;
  if (!resp.best) throw std::runtime_error("unconstrained sub-problem is infeasible");

  const ObjectivePoint x = resp.best->point;
  const std::size_t id = st.solutions.size();
  st.driver.insert(x, id, resp.state);
  st.result.insert(x, id, resp.state);
  st.solutions.push_back(std::move(resp.best->solution));
  if (cfg.harvesting) detail::harvest_into_result(st, resp.harvested, resp.state);

  const Rectangle initial{x, {cfg.f1_max, cfg.f2_min}};
  st.rects.add(initial);
  if (cfg.normalized_area_selection && initial.width() > 0.0 && initial.height() > 0.0) {
    st.area_scale_f1 = 1.0 / initial.width();
    st.area_scale_f2 = 1.0 / initial.height();
  }
  detail::record_step(st, std::numeric_limits<double>::infinity(), x, ms);
  return st;
}

struct StepReport {
  bool stepped = false;
  double c = 0.0;
  UpdateOutcome update;
};

/// One splitting step: pick the largest rectangle, solve at its f2 midpoint
/// with a warm start from the nearest archived search state, and apply the
/// update rules. Reports stepped = false when no rectangle is left.
template <SubproblemSolver S>
StepReport hrs_step(DriverState<typename S::Solution>& st, S& solver, const RunConfig& cfg) {
  const auto selected = st.rects.select_largest(st.area_scale_f1, st.area_scale_f2);
  if (!selected) return {};
  const Rectangle split = st.rects.rects()[*selected];
  const double c = 0.5 * (split.upper_left.f2 + split.lower_right.f2);

  SolverRequest req;
  req.f2_limit = c;
  req.warm_state = nearest_state(st.driver, c);
  req.iteration_budget = cfg.step_budget;
  const auto t0 = std::chrono::steady_clock::now();
  SolverResponse<typename S::Solution> resp = solver.solve(req);
  const double ms = detail::ms_since(t0);
  ++st.subproblems;

  std::optional<ObjectivePoint> x;
  if (resp.best && resp.best->point.f2 <= c + cfg.tau) x = resp.best->point;

  const std::size_t id = st.solutions.size();
  UpdateOutcome upd = update_after_solve(st.driver, st.rects, *selected, x, c, id,
                                         resp.state);
  bool keep = upd.accepted;
  if (x) keep = st.result.insert(*x, id, resp.state).accepted || keep;
  if (keep) st.solutions.push_back(std::move(resp.best->solution));
  if (cfg.harvesting) detail::harvest_into_result(st, resp.harvested, resp.state);

  detail::record_step(st, c, x, ms);
  return {true, c, std::move(upd)};
}

/// Full rectangle-splitting run: repeats hrs_step until the sub-problem
/// budget is exhausted or the rectangle set is empty.
template <SubproblemSolver S>
RunResult<typename S::Solution> run_hrs(S& solver, const RunConfig& cfg) {
  DriverState<typename S::Solution> st = hrs_initialize(solver, cfg);
  while (st.subproblems < cfg.n_max && !st.rects.empty()) {
    hrs_step(st, solver, cfg);
  }
  return {std::move(st.result), std::move(st.solutions), std::move(st.trace)};
}

/// Classical epsilon-constraint baseline: after the unconstrained solve,
/// repeatedly tightens the constraint to (smallest f2 among the sub-problem
/// optima so far) minus epsilon, warm-starting each sub-problem from the
/// previous one, until a sub-problem comes back infeasible or the safety cap
/// is reached. Harvested solutions enter the archive but never drive the
/// constraint schedule, mirroring how HRS updates rectangles only from the
/// cost-optima.
template <SubproblemSolver S>
RunResult<typename S::Solution> run_classical_ecm(S& solver, const RunConfig& cfg) {
  if (!(cfg.classical_epsilon > 0.0))
    throw std::invalid_argument("RunConfig::classical_epsilon must be positive");
  DriverState<typename S::Solution> st(cfg.tau);

  SolverRequest req;
  req.iteration_budget = cfg.initial_budget;
  auto t0 = std::chrono::steady_clock::now();
  SolverResponse<typename S::Solution> resp = solver.solve(req);
  double ms = detail::ms_since(t0);
  st.subproblems = 1;
  if (!resp.best) throw std::runtime_error("unconstrained sub-problem is infeasible");
  double optimum_min_f2 = resp.best->point.f2;
  {
    const std::size_t id = st.solutions.size();
    if (st.result.insert(resp.best->point, id, resp.state).accepted) {
      st.solutions.push_back(std::move(resp.best->solution));
    }
    if (cfg.harvesting) detail::harvest_into_result(st, resp.harvested, resp.state);
    detail::record_step(st, std::numeric_limits<double>::infinity(), resp.best->point, ms);
  }

  const long cap = static_cast<long>(cfg.n_max) * cfg.ecm_safety_multiplier;
  StateHandle state = resp.state;
  while (st.subproblems < cap) {
    const double c = optimum_min_f2 - cfg.classical_epsilon;
    SolverRequest next;
    next.f2_limit = c;
    next.warm_state = state;
    next.iteration_budget = cfg.step_budget;
    t0 = std::chrono::steady_clock::now();
    resp = solver.solve(next);
    ms = detail::ms_since(t0);
    ++st.subproblems;
    state = resp.state;

    std::optional<ObjectivePoint> x;
    if (resp.best && resp.best->point.f2 <= c + cfg.tau) x = resp.best->point;
    if (!x) {
      detail::record_step(st, c, std::nullopt, ms);
      break;
    }
    optimum_min_f2 = std::min(optimum_min_f2, x->f2);
    const std::size_t id = st.solutions.size();
    if (st.result.insert(*x, id, resp.state).accepted) {
      st.solutions.push_back(std::move(resp.best->solution));
    }
    if (cfg.harvesting) detail::harvest_into_result(st, resp.harvested, resp.state);
    detail::record_step(st, c, x, ms);
  }
  return {std::move(st.result), std::move(st.solutions), std::move(st.trace)};
}

}  // namespace hrs
