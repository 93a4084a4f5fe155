#include "hrs/vrp_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrs {

void Instance::build_distance_matrix() {
  const std::size_t n = customers.size();
  dist.assign(n + 1, std::vector<double>(n + 1, 0.0));
  auto coord = [&](std::size_t i) -> std::pair<double, double> {
    if (i == 0) return {depot_x, depot_y};
    return {customers[i - 1].x, customers[i - 1].y};
  };
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      auto [xi, yi] = coord(i);
      auto [xj, yj] = coord(j);
      const double d = std::hypot(xi - xj, yi - yj);
      dist[i][j] = d;
      dist[j][i] = d;
    }
  }
  if (file_ids.empty()) {
    file_ids.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) file_ids[i] = static_cast<int>(i + 1);
  }
}

double route_length(const Instance& inst, const std::vector<int>& route) {
  if (route.empty()) return 0.0;
  double len = inst.dist[0][static_cast<std::size_t>(route.front())];
  len += inst.service_contribution(route.front());
  for (std::size_t i = 1; i < route.size(); ++i) {
    len += inst.dist[static_cast<std::size_t>(route[i - 1])][static_cast<std::size_t>(route[i])];
    len += inst.service_contribution(route[i]);
  }
  len += inst.dist[static_cast<std::size_t>(route.back())][0];
  return len;
}

double route_load(const Instance& inst, const std::vector<int>& route) {
  double load = 0.0;
  for (int c : route) load += inst.demand_of(c);
  return load;
}

void VrpSolution::refresh_caches(const Instance& inst) {
  route_lengths.resize(routes.size());
  route_loads.resize(routes.size());
  for (std::size_t i = 0; i < routes.size(); ++i) {
    route_lengths[i] = route_length(inst, routes[i]);
    route_loads[i] = route_load(inst, routes[i]);
  }
}

namespace {

void check_coverage(const VrpSolution& s, const Instance& inst) {
  std::vector<int> seen(inst.num_customers() + 1, 0);
  for (const auto& route : s.routes) {
    for (int c : route) {
      if (c < 1 || static_cast<std::size_t>(c) > inst.num_customers())
        throw std::invalid_argument("solution references unknown customer " + std::to_string(c));
      if (++seen[static_cast<std::size_t>(c)] > 1)
        throw std::invalid_argument("customer " + std::to_string(c) + " visited twice");
    }
  }
  for (std::size_t c = 1; c <= inst.num_customers(); ++c) {
    if (seen[c] == 0)
      throw std::invalid_argument("customer " + std::to_string(c) + " not visited");
  }
}

}  // namespace

ObjectivePoint evaluate_objectives(const VrpSolution& s, const Instance& inst,
                                   FleetConvention convention) {
  check_coverage(s, inst);
  double total = 0.0;
  double lo = kInf;
  double hi = -kInf;
  for (const auto& route : s.routes) {
    const double len = route_length(inst, route);
    total += len;
    if (route.empty() && convention == FleetConvention::Free) continue;
    lo = std::min(lo, len);
    hi = std::max(hi, len);
  }
  const double range = (hi > -kInf) ? hi - lo : 0.0;
  return {total, range};
}

double penalized_cost(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp,
                      double c, FleetConvention convention) {
  const ObjectivePoint obj = evaluate_objectives(s, inst, convention);
  double penalty = 0.0;
  for (const auto& route : s.routes) {
    penalty += pp.w_cap * std::max(0.0, route_load(inst, route) - inst.capacity);
    if (inst.has_duration_limit())
      penalty += pp.w_dur * std::max(0.0, route_length(inst, route) - inst.max_duration);
  }
  if (c < kInf) penalty += pp.w_bal * std::max(0.0, obj.f2 - c);
  return obj.f1 + penalty;
}

void RouteLengthSet::build(const VrpSolution& s, FleetConvention convention) {
  lengths_.clear();
  for (std::size_t i = 0; i < s.routes.size(); ++i) {
    if (s.routes[i].empty() && convention == FleetConvention::Free) continue;
    lengths_.push_back(s.route_lengths[i]);
  }
  std::sort(lengths_.begin(), lengths_.end());
}

namespace {

struct Replacements {
  double removed[2];
  int n_removed = 0;
  double inserted[2];
  int n_inserted = 0;

  void add(double old_len, bool old_active, double new_len, bool new_active) {
    if (old_active) removed[n_removed++] = old_len;
    if (new_active) inserted[n_inserted++] = new_len;
  }
};

double range_with(const std::vector<double>& sorted, const Replacements& r) {
  const std::ptrdiff_t count =
      static_cast<std::ptrdiff_t>(sorted.size()) - r.n_removed + r.n_inserted;
  if (count <= 1) return 0.0;

  bool used[2] = {false, false};
  double hi = -kInf;
  for (std::size_t i = sorted.size(); i-- > 0;) {
    bool skipped = false;
    for (int k = 0; k < r.n_removed; ++k) {
      if (!used[k] && sorted[i] == r.removed[k]) {
        used[k] = true;
        skipped = true;
        break;
      }
    }
    if (!skipped) {
      hi = sorted[i];
      break;
    }
  }
  used[0] = used[1] = false;
  double lo = kInf;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    bool skipped = false;
    for (int k = 0; k < r.n_removed; ++k) {
      if (!used[k] && sorted[i] == r.removed[k]) {
        used[k] = true;
        skipped = true;
        break;
      }
    }
    if (!skipped) {
      lo = sorted[i];
      break;
    }
  }
  for (int k = 0; k < r.n_inserted; ++k) {
    hi = std::max(hi, r.inserted[k]);
    lo = std::min(lo, r.inserted[k]);
  }
  return hi - lo;
}

}  // namespace

double RouteLengthSet::range() const {
  if (lengths_.size() <= 1) return 0.0;
  return lengths_.back() - lengths_.front();
}

double RouteLengthSet::range_replacing(double old1, bool old1_active, double new1,
                                       bool new1_active) const {
  Replacements r;
  r.add(old1, old1_active, new1, new1_active);
  return range_with(lengths_, r);
}

double RouteLengthSet::range_replacing(double old1, bool old1_active, double new1,
                                       bool new1_active, double old2, bool old2_active,
                                       double new2, bool new2_active) const {
  Replacements r;
  r.add(old1, old1_active, new1, new1_active);
  r.add(old2, old2_active, new2, new2_active);
  return range_with(lengths_, r);
}

void RouteLengthSet::replace(double old_len, bool old_active, double new_len,
                             bool new_active) {
  if (old_active) {
    auto it = std::lower_bound(lengths_.begin(), lengths_.end(), old_len);
    if (it != lengths_.end() && *it == old_len) lengths_.erase(it);
  }
  if (new_active) {
    lengths_.insert(std::lower_bound(lengths_.begin(), lengths_.end(), new_len), new_len);
  }
}

double delta_balance_penalty(const RouteLengthSet& lengths, double w_bal, double c,
                             double old1, bool old1_active, double new1, bool new1_active,
                             double old2, bool old2_active, double new2, bool new2_active) {
  if (c >= kInf) return 0.0;
  const double before = lengths.range();
  const double after = lengths.range_replacing(old1, old1_active, new1, new1_active, old2,
                                               old2_active, new2, new2_active);
  return w_bal * (std::max(0.0, after - c) - std::max(0.0, before - c));
}

bool is_two_optimal(const VrpSolution& s, const Instance& inst) {
  constexpr double kTol = 1e-9;
  for (const auto& route : s.routes) {
    const std::size_t len = route.size();
    if (len < 2) continue;
    for (std::size_t i = 0; i + 1 < len; ++i) {
      const int prev = (i == 0) ? 0 : route[i - 1];
      for (std::size_t j = i + 1; j < len; ++j) {
        const int next = (j + 1 == len) ? 0 : route[j + 1];
        const double delta =
            inst.dist[static_cast<std::size_t>(prev)][static_cast<std::size_t>(route[j])] +
            inst.dist[static_cast<std::size_t>(route[i])][static_cast<std::size_t>(next)] -
            inst.dist[static_cast<std::size_t>(prev)][static_cast<std::size_t>(route[i])] -
            inst.dist[static_cast<std::size_t>(route[j])][static_cast<std::size_t>(next)];
        if (delta < -kTol) return false;
      }
    }
  }
  return true;
}

}  // namespace hrs
