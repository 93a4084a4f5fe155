#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "hrs/hrs_core.hpp"
#include "hrs/objective_space.hpp"
#include "hrs/vrp_model.hpp"

namespace hrs {

/// Enumeration bounds for the brute-force solver. The cap guards against
/// accidentally launching an enumeration that would never finish.
struct OracleLimit {
  std::size_t max_customers = 8;
  std::size_t max_routes = 3;
  double max_evaluations = 1e8;
};

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FrontPoint {
  VrpSolution solution;
  ObjectivePoint point;
};

/// Exhaustive bi-objective reference front for desk-scale instances.
///
/// Enumerates every partition of the customers into at most
/// min(max_routes, fleet) non-empty routes, assigns each route its exact
/// minimum-length order, filters capacity/duration feasibility, and returns
/// the non-dominated set sorted ascending by f1. Under the Fixed convention
/// unused vehicles count as zero-length routes in f2.
/// Throws OracleError when the instance exceeds the limits.
std::vector<FrontPoint> enumerate_pareto(const Instance& inst, FleetConvention convention,
                                         const OracleLimit& limit = {});

/// Minimum-f1 solution among the enumerated ones with f2 <= c; f1 ties are
/// broken by smaller f2. Returns nullopt when no enumerated solution
/// satisfies the constraint.
std::optional<FrontPoint> solve_constrained_exact(const Instance& inst, double c,
                                                  FleetConvention convention,
                                                  const OracleLimit& limit = {});

/// Exact sub-problem solver for the drivers, backed by a front enumerated
/// once at construction. Ignores budgets and warm states, harvests nothing.
class OracleSolver {
 public:
  using Solution = VrpSolution;

  OracleSolver(const Instance& inst, FleetConvention convention, OracleLimit limit = {});

  SolverResponse<VrpSolution> solve(const SolverRequest& req) const;

  const std::vector<FrontPoint>& front() const { return front_; }

 private:
  std::vector<FrontPoint> front_;
};

}  // namespace hrs
