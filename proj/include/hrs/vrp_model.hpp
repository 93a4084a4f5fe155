#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hrs/objective_space.hpp"

namespace hrs {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// How empty route slots enter the imbalance objective.
///  - Fixed: the fleet size is part of the problem; every unused vehicle
///    contributes a workload of 0 to the range.
///  - Free: the number of vehicles is a decision; empty routes are ignored.
enum class FleetConvention { Fixed, Free };

struct Customer {
  double x = 0.0;
  double y = 0.0;
  double demand = 0.0;
  double service_time = 0.0;
};

/// Immutable problem data. Node 0 is the depot, customers are 1..n in the
/// distance matrix. `file_ids` keeps the original instance-file node ids for
/// serialization (index 0 = depot).
struct Instance {
  std::string name;
  double depot_x = 0.0;
  double depot_y = 0.0;
  std::vector<Customer> customers;
  double capacity = 0.0;
  double max_duration = kInf;  // inf when no duration constraint
  int fleet_size = 0;          // 0 = unspecified (free-fleet runs)
  std::vector<std::vector<double>> dist;  // (n+1) x (n+1), symmetric, zero diagonal
  std::vector<int> file_ids;

  std::size_t num_customers() const { return customers.size(); }
  bool has_duration_limit() const { return max_duration < kInf; }

  /// Route length contribution of a customer: its service time when a
  /// duration limit is present, 0 otherwise.
  double service_contribution(int customer) const {
    return has_duration_limit() ? customers[static_cast<std::size_t>(customer) - 1].service_time
                                : 0.0;
  }

  double demand_of(int customer) const {
    return customers[static_cast<std::size_t>(customer) - 1].demand;
  }

  /// Fills the distance matrix from coordinates (unrounded Euclidean).
  void build_distance_matrix();
};

/// A route plan. Routes hold customer indices (1..n); empty slots are kept so
/// that fixed-fleet solutions know their vehicle count. Cached per-route
/// lengths include service times when the instance has a duration limit.
struct VrpSolution {
  std::vector<std::vector<int>> routes;
  std::vector<double> route_lengths;
  std::vector<double> route_loads;

  std::size_t used_routes() const {
    std::size_t n = 0;
    for (const auto& r : routes) n += !r.empty();
    return n;
  }

  /// Recomputes cached lengths and loads from the route sequences.
  void refresh_caches(const Instance& inst);
};

double route_length(const Instance& inst, const std::vector<int>& route);
double route_load(const Instance& inst, const std::vector<int>& route);

struct PenaltyParams {
  double w_cap = 1.0;
  double w_dur = 1.0;
  double w_bal = 1.0;

  PenaltyParams scaled(double factor) const {
    return {w_cap * factor, w_dur * factor, w_bal * factor};
  }
};

/// (f1, f2) of a solution covering all customers: f1 is the sum of route
/// lengths, f2 the range max_i d_i - min_i d_i under the given convention.
/// Throws std::invalid_argument when a customer is missing or duplicated.
ObjectivePoint evaluate_objectives(const VrpSolution& s, const Instance& inst,
                                   FleetConvention convention);

/// f1 plus weighted capacity, duration, and balance-excess penalties. The
/// balance term is w_bal * max(0, f2 - c); pass c = +inf to drop it.
double penalized_cost(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp,
                      double c, FleetConvention convention);

/// Sorted multiset of the route lengths that participate in the imbalance
/// objective (all slots under Fixed, non-empty slots under Free). Supports
/// constant-time range queries with up to two entries replaced, which is what
/// move evaluation needs.
class RouteLengthSet {
 public:
  void build(const VrpSolution& s, FleetConvention convention);

  double range() const;

  /// One route's length changes from `old1` to `new1`; activity flags say
  /// whether the route belongs to the set before/after (always true under
  /// Fixed; under Free a route leaves the set when it becomes empty).
  double range_replacing(double old1, bool old1_active, double new1, bool new1_active) const;

  /// Two routes change at once.
  double range_replacing(double old1, bool old1_active, double new1, bool new1_active,
                         double old2, bool old2_active, double new2,
                         bool new2_active) const;

  void replace(double old_len, bool old_active, double new_len, bool new_active);

  const std::vector<double>& sorted() const { return lengths_; }

 private:
  std::vector<double> lengths_;  // ascending
};

/// Change in the balance penalty w_bal * max(0, f2 - c) if the two affected
/// routes took their new lengths, computed from the sorted length list alone.
double delta_balance_penalty(const RouteLengthSet& lengths, double w_bal, double c,
                             double old1, bool old1_active, double new1, bool new1_active,
                             double old2 = 0.0, bool old2_active = false, double new2 = 0.0,
                             bool new2_active = false);

/// True iff no intra-route 2-opt move shortens any route by more than 1e-9.
bool is_two_optimal(const VrpSolution& s, const Instance& inst);

}  // namespace hrs
