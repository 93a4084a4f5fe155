#include "hrs/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace hrs {

namespace {

struct TspEntry {
  bool computed = false;
  double length = 0.0;
  std::vector<int> order;
};

// Exact minimum-length order of one route over the customers in `mask`,
// solved by trying every permutation. Lengths include service times when the
// instance has a duration limit.
const TspEntry& route_tsp(const Instance& inst, std::uint32_t mask,
                          std::vector<TspEntry>& memo) {
  TspEntry& entry = memo[mask];
  if (entry.computed) return entry;
  std::vector<int> members;
  for (int c = 1; c <= static_cast<int>(inst.num_customers()); ++c) {
    if (mask & (1u << (c - 1))) members.push_back(c);
  }
  std::sort(members.begin(), members.end());
  double best = kInf;
  std::vector<int> best_order;
  std::vector<int> perm = members;
  do {
    const double len = route_length(inst, perm);
    if (len < best) {
      best = len;
      best_order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  entry.computed = true;
  entry.length = best;
  entry.order = std::move(best_order);
  return entry;
}

double partitions_up_to(std::size_t n, std::size_t kmax) {
  std::vector<std::vector<double>> s(n + 1, std::vector<double>(kmax + 1, 0.0));
  s[0][0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = 1; k <= kmax; ++k) {
      s[i][k] = s[i - 1][k - 1] + static_cast<double>(k) * s[i - 1][k];
    }
  }
  double total = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) total += s[n][k];
  return total;
}

void check_limits(const Instance& inst, FleetConvention convention, const OracleLimit& limit,
                  std::size_t kmax) {
  const std::size_t n = inst.num_customers();
  if (n == 0) throw OracleError("oracle: instance has no customers");
  if (n > limit.max_customers)
    throw OracleError("oracle: instance exceeds customer limit (" + std::to_string(n) + " > " +
                      std::to_string(limit.max_customers) + ")");
  if (n > 16) throw OracleError("oracle: customer count beyond representable enumeration");
  if (convention == FleetConvention::Fixed && inst.fleet_size < 1)
    throw OracleError("oracle: fixed-fleet enumeration needs a fleet size");
  double perm_work = 0.0;
  double factorial = 1.0;
  for (std::size_t k = 1; k <= n; ++k) factorial *= static_cast<double>(k);
  perm_work = factorial * 3.0;  // all route TSPs, memoized per customer subset
  const double est = partitions_up_to(n, kmax) * static_cast<double>(n) + perm_work;
  if (est > limit.max_evaluations)
    throw OracleError("oracle: estimated enumeration size exceeds the evaluation cap");
}

}  // namespace

std::vector<FrontPoint> enumerate_pareto(const Instance& inst, FleetConvention convention,
                                         const OracleLimit& limit) {
  const std::size_t n = inst.num_customers();
  std::size_t kmax = std::min(limit.max_routes, n);
  if (convention == FleetConvention::Fixed)
    kmax = std::min(kmax, static_cast<std::size_t>(std::max(inst.fleet_size, 0)));
  check_limits(inst, convention, limit, kmax);

  std::vector<TspEntry> memo(1u << n);
  std::vector<FrontPoint> candidates;
  std::vector<std::uint32_t> block_masks;

  // Restricted-growth enumeration: customer 1 opens block 0, each later
  // customer joins an existing block or opens the next one.
  auto emit = [&]() {
    const std::size_t k = block_masks.size();
    double total = 0.0;
    double lo = kInf;
    double hi = -kInf;
    std::vector<const TspEntry*> entries(k);
    for (std::size_t b = 0; b < k; ++b) {
      const TspEntry& e = route_tsp(inst, block_masks[b], memo);
      entries[b] = &e;
      double load = 0.0;
      for (int c : e.order) load += inst.demand_of(c);
      if (load > inst.capacity) return;
      if (inst.has_duration_limit() && e.length > inst.max_duration) return;
      total += e.length;
      lo = std::min(lo, e.length);
      hi = std::max(hi, e.length);
    }
    std::size_t slots = k;
    if (convention == FleetConvention::Fixed) {
      slots = static_cast<std::size_t>(inst.fleet_size);
      if (k < slots) lo = 0.0;
    }
    FrontPoint fp;
    fp.point = {total, hi - lo};
    fp.solution.routes.reserve(slots);
    for (std::size_t b = 0; b < k; ++b) fp.solution.routes.push_back(entries[b]->order);
    while (fp.solution.routes.size() < slots) fp.solution.routes.emplace_back();
    fp.solution.refresh_caches(inst);
    candidates.push_back(std::move(fp));
  };

  auto extend = [&](auto&& self, std::size_t customer) -> void {
    if (customer > n) {
      emit();
      return;
    }
    const std::uint32_t bit = 1u << (customer - 1);
    for (std::size_t b = 0; b < block_masks.size(); ++b) {
      block_masks[b] |= bit;
      self(self, customer + 1);
      block_masks[b] &= ~bit;
    }
    if (block_masks.size() < kmax) {
      block_masks.push_back(bit);
      self(self, customer + 1);
      block_masks.pop_back();
    }
  };
  extend(extend, 1);

  // Non-dominated filter, exact comparisons; first-found wins among equals.
  std::vector<FrontPoint> front;
  for (FrontPoint& cand : candidates) {
    bool rejected = false;
    for (const FrontPoint& kept : front) {
      if (dominates(kept.point, cand.point, 0.0) || kept.point == cand.point) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    std::erase_if(front, [&](const FrontPoint& kept) {
      return dominates(cand.point, kept.point, 0.0);
    });
    front.push_back(std::move(cand));
  }
  std::sort(front.begin(), front.end(), [](const FrontPoint& a, const FrontPoint& b) {
    return a.point.f1 < b.point.f1 || (a.point.f1 == b.point.f1 && a.point.f2 < b.point.f2);
  });
  return front;
}

namespace {

std::optional<FrontPoint> scan_front(const std::vector<FrontPoint>& front, double c) {
  std::optional<FrontPoint> best;
  for (const FrontPoint& fp : front) {
    if (fp.point.f2 > c) continue;
    if (!best || fp.point.f1 < best->point.f1 ||
        (fp.point.f1 == best->point.f1 && fp.point.f2 < best->point.f2)) {
      best = fp;
    }
  }
  return best;
}

}  // namespace

std::optional<FrontPoint> solve_constrained_exact(const Instance& inst, double c,
                                                  FleetConvention convention,
                                                  const OracleLimit& limit) {
  return scan_front(enumerate_pareto(inst, convention, limit), c);
}

OracleSolver::OracleSolver(const Instance& inst, FleetConvention convention,
                           OracleLimit limit)
    : front_(enumerate_pareto(inst, convention, limit)) {}

SolverResponse<VrpSolution> OracleSolver::solve(const SolverRequest& req) const {
  SolverResponse<VrpSolution> resp;
  if (std::optional<FrontPoint> best = scan_front(front_, req.f2_limit)) {
    resp.best = SolverResult<VrpSolution>{std::move(best->solution), best->point};
  }
  return resp;
}

}  // namespace hrs

