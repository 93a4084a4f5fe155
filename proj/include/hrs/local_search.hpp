#pragma once

#include <random>
#include <vector>

#include "hrs/vrp_model.hpp"

namespace hrs {

struct LsStats {
  long evaluated = 0;
  long accepted = 0;
  std::vector<double> accepted_costs;  // penalized cost after each accepted move
  double max_delta_error = 0.0;        // only filled when check_deltas is set
  bool check_deltas = false;
};

/// For each customer, its nearest other customers by distance, at most
/// `granularity` of them.
std::vector<std::vector<int>> build_neighbor_lists(const Instance& inst, int granularity);

/// First-improvement descent over the classical relocate/swap/2-opt/2-opt*
/// neighborhood, restricted to customer pairs (u, v) with v among u's
/// neighbors. Customers are scanned in random order; a move is applied as
/// soon as it lowers the penalized cost by more than 1e-9. Returns a solution
/// in which no restricted move improves.
VrpSolution local_search(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp,
                         double c, FleetConvention convention,
                         const std::vector<std::vector<int>>& neighbors,
                         std::mt19937_64& rng, LsStats* stats = nullptr);

/// Convenience overload building the neighbor lists for `granularity` ad hoc.
VrpSolution local_search(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp,
                         double c, FleetConvention convention, int granularity,
                         std::mt19937_64& rng, LsStats* stats = nullptr);

}  // namespace hrs
