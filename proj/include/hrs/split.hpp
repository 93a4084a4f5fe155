#pragma once

#include <cstddef>
#include <vector>

#include "hrs/vrp_model.hpp"

namespace hrs {

/// A permutation of all customers (1..n), decoded into routes by Split.
using GiantTour = std::vector<int>;

/// Penalized cost data for contiguous tour segments, shared by the Split
/// dynamic program and by exhaustive segmentation checks so both price a
/// segment identically.
class SplitCostModel {
 public:
  SplitCostModel(const Instance& inst, const PenaltyParams& pp, const GiantTour& tour);

  /// Length (incl. service when the instance is duration-limited), load and
  /// penalized cost of one route serving tour[i..j).
  double segment_length(std::size_t i, std::size_t j) const;
  double segment_load(std::size_t i, std::size_t j) const;
  double segment_cost(std::size_t i, std::size_t j) const;

  std::size_t size() const { return tour_->size(); }

 private:
  const Instance* inst_;
  const PenaltyParams* pp_;
  const GiantTour* tour_;
  std::vector<double> cum_dist_;  // in-tour consecutive distances
  std::vector<double> cum_load_;
  std::vector<double> cum_serv_;
};

/// Optimal segmentation of a giant tour into routes, limited-fleet variant:
/// the plan uses `fleet_slots` route slots and leaves at most one of them
/// empty (fewer only when there are not enough customers). Capacity and
/// duration violations are priced into the segment costs, so every tour
/// decodes; the balance objective is left to local search.
VrpSolution split_giant_tour(const GiantTour& tour, const Instance& inst,
                             const PenaltyParams& pp, int fleet_slots);

/// Penalized cost of the plan split_giant_tour would return (exposed for
/// direct comparison against segment-enumeration checks).
double split_best_cost(const GiantTour& tour, const Instance& inst, const PenaltyParams& pp,
                       int fleet_slots);

}  // namespace hrs
