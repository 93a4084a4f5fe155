#include "hrs/split.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrs {

SplitCostModel::SplitCostModel(const Instance& inst, const PenaltyParams& pp,
                               const GiantTour& tour)
    : inst_(&inst), pp_(&pp), tour_(&tour) {
  const std::size_t n = tour.size();
  cum_dist_.assign(n, 0.0);
  cum_load_.assign(n + 1, 0.0);
  cum_serv_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      cum_dist_[i] = cum_dist_[i - 1] +
                     inst.dist[static_cast<std::size_t>(tour[i - 1])]
                              [static_cast<std::size_t>(tour[i])];
    }
    cum_load_[i + 1] = cum_load_[i] + inst.demand_of(tour[i]);
    cum_serv_[i + 1] = cum_serv_[i] + inst.service_contribution(tour[i]);
  }
}

double SplitCostModel::segment_length(std::size_t i, std::size_t j) const {
  const auto first = static_cast<std::size_t>((*tour_)[i]);
  const auto last = static_cast<std::size_t>((*tour_)[j - 1]);
  return inst_->dist[0][first] + (cum_dist_[j - 1] - cum_dist_[i]) + inst_->dist[last][0] +
         (cum_serv_[j] - cum_serv_[i]);
}

double SplitCostModel::segment_load(std::size_t i, std::size_t j) const {
  return cum_load_[j] - cum_load_[i];
}

double SplitCostModel::segment_cost(std::size_t i, std::size_t j) const {
  const double len = segment_length(i, j);
  double cost = len + pp_->w_cap * std::max(0.0, segment_load(i, j) - inst_->capacity);
  if (inst_->has_duration_limit())
    cost += pp_->w_dur * std::max(0.0, len - inst_->max_duration);
  return cost;
}

namespace {

struct SplitPlan {
  double cost = 0.0;
  std::vector<std::size_t> cut_after;  // segment end indices, ascending, last == n
};

SplitPlan solve_split(const SplitCostModel& model, int fleet_slots) {
  const std::size_t n = model.size();
  if (n == 0) throw std::invalid_argument("split: empty giant tour");
  if (fleet_slots < 1) throw std::invalid_argument("split: fleet_slots must be >= 1");

  const std::size_t slots = static_cast<std::size_t>(fleet_slots);
  const std::size_t k_max = std::min(slots, n);
  const std::size_t k_min = std::max<std::size_t>(1, std::min(slots - 1, n));

  constexpr double kUnreached = std::numeric_limits<double>::infinity();
  // v[k][j]: best cost of covering tour[0..j) with exactly k routes.
  std::vector<std::vector<double>> v(k_max + 1, std::vector<double>(n + 1, kUnreached));
  std::vector<std::vector<std::size_t>> pred(k_max + 1, std::vector<std::size_t>(n + 1, 0));
  v[0][0] = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      double best = kUnreached;
      std::size_t best_i = 0;
      for (std::size_t i = k - 1; i < j; ++i) {
        if (v[k - 1][i] == kUnreached) continue;
        const double cost = v[k - 1][i] + model.segment_cost(i, j);
        if (cost < best) {
          best = cost;
          best_i = i;
        }
      }
      v[k][j] = best;
      pred[k][j] = best_i;
    }
  }

  std::size_t best_k = k_min;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    if (v[k][n] < v[best_k][n]) best_k = k;
  }

  SplitPlan plan;
  plan.cost = v[best_k][n];
  std::vector<std::size_t> cuts;
  std::size_t j = n;
  for (std::size_t k = best_k; k >= 1; --k) {
    cuts.push_back(j);
    j = pred[k][j];
  }
  std::reverse(cuts.begin(), cuts.end());
  plan.cut_after = std::move(cuts);
  return plan;
}

}  // namespace

VrpSolution split_giant_tour(const GiantTour& tour, const Instance& inst,
                             const PenaltyParams& pp, int fleet_slots) {
  const SplitCostModel model(inst, pp, tour);
  const SplitPlan plan = solve_split(model, fleet_slots);

  VrpSolution sol;
  sol.routes.reserve(static_cast<std::size_t>(fleet_slots));
  std::size_t start = 0;
  for (std::size_t end : plan.cut_after) {
    sol.routes.emplace_back(tour.begin() + static_cast<std::ptrdiff_t>(start),
                            tour.begin() + static_cast<std::ptrdiff_t>(end));
    start = end;
  }
  while (sol.routes.size() < static_cast<std::size_t>(fleet_slots))
    sol.routes.emplace_back();
  sol.refresh_caches(inst);
  return sol;
}

double split_best_cost(const GiantTour& tour, const Instance& inst, const PenaltyParams& pp,
                       int fleet_slots) {
  const SplitCostModel model(inst, pp, tour);
  return solve_split(model, fleet_slots).cost;
}

}  // namespace hrs
