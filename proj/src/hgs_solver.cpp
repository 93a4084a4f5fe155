#include "hrs/hgs_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hrs {

std::vector<std::uint32_t> edge_keys(const VrpSolution& s, std::size_t num_customers) {
  const std::uint32_t base = static_cast<std::uint32_t>(num_customers) + 1;
  std::vector<std::uint32_t> keys;
  auto add = [&](int a, int b) {
    const auto lo = static_cast<std::uint32_t>(std::min(a, b));
    const auto hi = static_cast<std::uint32_t>(std::max(a, b));
    keys.push_back(lo * base + hi);
  };
  for (const auto& route : s.routes) {
    if (route.empty()) continue;
    add(0, route.front());
    for (std::size_t i = 1; i < route.size(); ++i) add(route[i - 1], route[i]);
    add(route.back(), 0);
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

double broken_pairs_distance(std::span<const std::uint32_t> a,
                             std::span<const std::uint32_t> b, double norm) {
  std::size_t i = 0, j = 0, diff = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++diff;
      ++i;
    } else {
      ++diff;
      ++j;
    }
  }
  diff += (a.size() - i) + (b.size() - j);
  return static_cast<double>(diff) / norm;
}

double broken_pairs_distance(const VrpSolution& a, const VrpSolution& b,
                             std::size_t num_customers, double norm) {
  return broken_pairs_distance(edge_keys(a, num_customers), edge_keys(b, num_customers),
                               norm);
}

GiantTour ox_crossover(const GiantTour& p1, const GiantTour& p2, std::size_t cut1,
                       std::size_t cut2) {
  const std::size_t n = p1.size();
  GiantTour child(n, 0);
  std::vector<char> used(n + 1, 0);
  for (std::size_t i = cut1; i <= cut2; ++i) {
    child[i] = p1[i];
    used[static_cast<std::size_t>(p1[i])] = 1;
  }
  std::size_t write = (cut2 + 1) % n;
  for (std::size_t k = 0; k < n; ++k) {
    const int cand = p2[(cut2 + 1 + k) % n];
    if (used[static_cast<std::size_t>(cand)]) continue;
    child[write] = cand;
    used[static_cast<std::size_t>(cand)] = 1;
    write = (write + 1) % n;
  }
  return child;
}

GiantTour ox_crossover(const GiantTour& p1, const GiantTour& p2, std::mt19937_64& rng) {
  const std::size_t n = p1.size();
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::size_t a = pick(rng);
  std::size_t b = pick(rng);
  if (a > b) std::swap(a, b);
  return ox_crossover(p1, p2, a, b);
}

PenaltyParams adapt_penalties(const PenaltyParams& pp,
                              std::span<const FeasibilityRecord> window, double xi_ref) {
  PenaltyParams out = pp;
  double* weights[3] = {&out.w_cap, &out.w_dur, &out.w_bal};
  for (int k = 0; k < 3; ++k) {
    std::size_t ok = 0;
    for (const FeasibilityRecord& rec : window) ok += rec[static_cast<std::size_t>(k)];
    const double fraction = static_cast<double>(ok) / static_cast<double>(window.size());
    if (fraction < xi_ref - 0.05) {
      *weights[k] *= 1.2;
    } else if (fraction > xi_ref + 0.05) {
      *weights[k] *= 0.85;
    }
    *weights[k] = std::clamp(*weights[k], 1e-2, 1e5);
  }
  return out;
}

void SubPopulation::insert(Individual ind) {
  std::vector<double> row(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    row[i] = broken_pairs_distance(members_[i].edges, ind.edges, norm_);
  }
  for (std::size_t i = 0; i < members_.size(); ++i) dist_[i].push_back(row[i]);
  row.push_back(0.0);
  dist_.push_back(std::move(row));
  members_.push_back(std::move(ind));
}

void SubPopulation::remove(std::size_t index) {
  members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(index));
  dist_.erase(dist_.begin() + static_cast<std::ptrdiff_t>(index));
  for (auto& row : dist_) row.erase(row.begin() + static_cast<std::ptrdiff_t>(index));
}

void SubPopulation::clear() {
  members_.clear();
  dist_.clear();
}

double SubPopulation::diversity_contribution(std::size_t index, int n_close) const {
  if (members_.size() <= 1) return 0.0;
  std::vector<double> gaps;
  gaps.reserve(members_.size() - 1);
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (j != index) gaps.push_back(dist_[index][j]);
  }
  const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(n_close), gaps.size());
  std::partial_sort(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(keep), gaps.end());
  double sum = 0.0;
  for (std::size_t k = 0; k < keep; ++k) sum += gaps[k];
  return sum / static_cast<double>(keep);
}

std::vector<double> SubPopulation::biased_fitness(int elite, int n_close) const {
  const std::size_t n = members_.size();
  std::vector<double> bf(n, 0.0);
  if (n <= 1) return bf;

  std::vector<std::size_t> by_cost(n);
  std::iota(by_cost.begin(), by_cost.end(), 0);
  std::sort(by_cost.begin(), by_cost.end(), [&](std::size_t a, std::size_t b) {
    if (members_[a].cost != members_[b].cost) return members_[a].cost < members_[b].cost;
    return members_[a].id < members_[b].id;
  });

  std::vector<double> div(n);
  for (std::size_t i = 0; i < n; ++i) div[i] = diversity_contribution(i, n_close);
  std::vector<std::size_t> by_div(n);
  std::iota(by_div.begin(), by_div.end(), 0);
  std::sort(by_div.begin(), by_div.end(), [&](std::size_t a, std::size_t b) {
    if (div[a] != div[b]) return div[a] > div[b];  // more diverse is better
    return members_[a].id < members_[b].id;
  });

  const double weight =
      std::max(0.0, 1.0 - static_cast<double>(elite) / static_cast<double>(n));
  for (std::size_t rank = 0; rank < n; ++rank) bf[by_cost[rank]] += static_cast<double>(rank);
  for (std::size_t rank = 0; rank < n; ++rank)
    bf[by_div[rank]] += weight * static_cast<double>(rank);
  return bf;
}

void SubPopulation::cull_to(std::size_t target, int elite, int n_close) {
  while (members_.size() > target) {
    const std::vector<double> bf = biased_fitness(elite, n_close);
    std::vector<std::size_t> by_cost(members_.size());
    std::iota(by_cost.begin(), by_cost.end(), 0);
    std::sort(by_cost.begin(), by_cost.end(), [&](std::size_t a, std::size_t b) {
      if (members_[a].cost != members_[b].cost) return members_[a].cost < members_[b].cost;
      return members_[a].id < members_[b].id;
    });
    std::vector<char> is_elite(members_.size(), 0);
    for (std::size_t r = 0; r < std::min<std::size_t>(static_cast<std::size_t>(elite),
                                                      members_.size());
         ++r) {
      is_elite[by_cost[r]] = 1;
    }
    std::ptrdiff_t worst = -1;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (is_elite[i]) continue;
      if (worst < 0 || bf[i] > bf[static_cast<std::size_t>(worst)]) {
        worst = static_cast<std::ptrdiff_t>(i);
      }
    }
    if (worst < 0) break;  // everything protected
    remove(static_cast<std::size_t>(worst));
  }
}

std::pair<int, std::size_t> binary_tournament(std::span<const double> bf_feasible,
                                              std::span<const double> bf_infeasible,
                                              std::mt19937_64& rng) {
  const std::size_t total = bf_feasible.size() + bf_infeasible.size();
  std::uniform_int_distribution<std::size_t> pick(0, total - 1);
  auto fitness = [&](std::size_t flat) {
    return flat < bf_feasible.size() ? bf_feasible[flat]
                                     : bf_infeasible[flat - bf_feasible.size()];
  };
  const std::size_t a = pick(rng);
  const std::size_t b = pick(rng);
  const std::size_t win = fitness(b) < fitness(a) ? b : a;
  if (win < bf_feasible.size()) return {0, win};
  return {1, win - bf_feasible.size()};
}

VrpSolution repair(const VrpSolution& s, const Instance& inst, const PenaltyParams& base,
                   double c, FleetConvention convention,
                   const std::vector<std::vector<int>>& neighbors, std::mt19937_64& rng) {
  auto violated = [&](const VrpSolution& sol) {
    for (std::size_t r = 0; r < sol.routes.size(); ++r) {
      if (sol.route_loads[r] > inst.capacity) return true;
      if (inst.has_duration_limit() && sol.route_lengths[r] > inst.max_duration) return true;
    }
    if (c < kInf) {
      const ObjectivePoint obj = evaluate_objectives(sol, inst, convention);
      if (obj.f2 > c) return true;
    }
    return false;
  };
  VrpSolution out = local_search(s, inst, base.scaled(10.0), c, convention, neighbors, rng);
  if (violated(out)) {
    out = local_search(out, inst, base.scaled(100.0), c, convention, neighbors, rng);
  }
  return out;
}

HgsSolver::HgsSolver(const Instance& inst, HgsConfig cfg, FleetConvention convention,
                     std::uint64_t seed)
    : inst_(inst),
      cfg_(cfg),
      conv_(convention),
      rng_(seed),
      neighbors_(build_neighbor_lists(inst, cfg.granularity)),
      distance_norm_(0.0),
      feasible_(1.0),
      infeasible_(1.0) {
  int m_hint;
  if (conv_ == FleetConvention::Fixed) {
    m_hint = std::max(1, inst.fleet_size);
  } else {
    double total = 0.0;
    for (const Customer& cust : inst.customers) total += cust.demand;
    m_hint = std::max(1, static_cast<int>(std::ceil(total / inst.capacity)));
  }
  distance_norm_ = static_cast<double>(inst.num_customers() + static_cast<std::size_t>(m_hint));
  feasible_ = SubPopulation(distance_norm_);
  infeasible_ = SubPopulation(distance_norm_);
  pp_ = initial_penalties();
  slots_ = derive_slots();
}

PenaltyParams HgsSolver::initial_penalties() const {
  const std::size_t n = inst_.num_customers();
  double dist_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      dist_sum += inst_.dist[i][j];
      ++pairs;
    }
  }
  const double avg_dist = pairs > 0 ? dist_sum / static_cast<double>(pairs) : 1.0;
  double demand_sum = 0.0;
  for (const Customer& cust : inst_.customers) demand_sum += cust.demand;
  const double avg_demand = n > 0 ? demand_sum / static_cast<double>(n) : 1.0;
  const double w = std::clamp(avg_dist / std::max(avg_demand, 1e-9), 1e-2, 1e5);
  return {w, w, w};
}

int HgsSolver::derive_slots() const {
  if (conv_ == FleetConvention::Fixed) return std::max(1, inst_.fleet_size);
  const int n = static_cast<int>(inst_.num_customers());
  int used;
  if (best_found_) {
    used = static_cast<int>(best_found_->solution.used_routes());
  } else {
    double total = 0.0;
    for (const Customer& cust : inst_.customers) total += cust.demand;
    used = std::max(1, static_cast<int>(std::ceil(total / inst_.capacity)));
  }
  return std::min(n, used + 1);
}

void HgsSolver::classify(Individual& ind) const {
  ind.cap_ok = true;
  ind.dur_ok = true;
  for (std::size_t r = 0; r < ind.solution.routes.size(); ++r) {
    if (ind.solution.route_loads[r] > inst_.capacity) ind.cap_ok = false;
    if (inst_.has_duration_limit() && ind.solution.route_lengths[r] > inst_.max_duration)
      ind.dur_ok = false;
  }
  ind.bal_ok = !(c_ < kInf) || ind.objectives.f2 <= c_;

  double cost = 0.0;
  for (std::size_t r = 0; r < ind.solution.routes.size(); ++r) {
    cost += ind.solution.route_lengths[r] +
            pp_.w_cap * std::max(0.0, ind.solution.route_loads[r] - inst_.capacity);
    if (inst_.has_duration_limit())
      cost += pp_.w_dur * std::max(0.0, ind.solution.route_lengths[r] - inst_.max_duration);
  }
  if (c_ < kInf) cost += pp_.w_bal * std::max(0.0, ind.objectives.f2 - c_);
  ind.cost = cost;
}

Individual HgsSolver::individual_from_solution(VrpSolution s) {
  Individual ind;
  ind.id = next_id_++;
  ind.tour.reserve(inst_.num_customers());
  for (const auto& route : s.routes) {
    ind.tour.insert(ind.tour.end(), route.begin(), route.end());
  }
  double total = 0.0;
  double lo = kInf, hi = -kInf;
  for (std::size_t r = 0; r < s.routes.size(); ++r) {
    total += s.route_lengths[r];
    if (s.routes[r].empty() && conv_ == FleetConvention::Free) continue;
    lo = std::min(lo, s.route_lengths[r]);
    hi = std::max(hi, s.route_lengths[r]);
  }
  ind.objectives = {total, hi > -kInf ? hi - lo : 0.0};
  ind.edges = edge_keys(s, inst_.num_customers());
  ind.solution = std::move(s);
  classify(ind);
  return ind;
}

Individual HgsSolver::make_individual(GiantTour tour) {
  VrpSolution s = split_giant_tour(tour, inst_, pp_, slots_);
  s = local_search(s, inst_, pp_, c_, conv_, neighbors_, rng_);
  return individual_from_solution(std::move(s));
}

void HgsSolver::note_best(const Individual& ind, bool* improved) {
  if (!ind.feasible()) return;
  if (!best_found_ || ind.objectives.f1 < best_found_->point.f1) {
    best_found_ = SolverResult<VrpSolution>{ind.solution, ind.objectives};
    best_found_at_ = insertions_made_;
    if (improved) *improved = true;
  } else if (ind.objectives.f1 == best_found_->point.f1 &&
             ind.objectives.f2 < best_found_->point.f2) {
    best_found_ = SolverResult<VrpSolution>{ind.solution, ind.objectives};
  }
}

void HgsSolver::insert_individual(Individual ind) {
  window_.push_back({ind.cap_ok, ind.dur_ok, ind.bal_ok});
  if (window_.size() > 100) window_.erase(window_.begin());
  if (++since_adapt_ >= 100) {
    pp_ = adapt_penalties(pp_, window_, cfg_.xi_ref);
    since_adapt_ = 0;
  }
  SubPopulation& pop = ind.feasible() ? feasible_ : infeasible_;
  pop.insert(std::move(ind));
  const std::size_t cap =
      static_cast<std::size_t>(cfg_.mu) + static_cast<std::size_t>(cfg_.lambda);
  if (pop.size() > cap) {
    pop.cull_to(static_cast<std::size_t>(cfg_.mu), cfg_.elite, cfg_.n_close);
  }
}

void HgsSolver::seed_random(int count) {
  GiantTour base(inst_.num_customers());
  std::iota(base.begin(), base.end(), 1);
  for (int k = 0; k < count; ++k) {
    GiantTour tour = base;
    std::shuffle(tour.begin(), tour.end(), rng_);
    Individual ind = make_individual(std::move(tour));
    if (count_insertions_) ++insertions_made_;
    note_best(ind, nullptr);
    insert_individual(std::move(ind));
  }
}

bool HgsSolver::evolve_generation() {
  const std::vector<double> bf_f = feasible_.biased_fitness(cfg_.elite, cfg_.n_close);
  const std::vector<double> bf_i = infeasible_.biased_fitness(cfg_.elite, cfg_.n_close);
  auto parent = [&]() -> const Individual& {
    auto [pop, idx] = binary_tournament(bf_f, bf_i, rng_);
    return pop == 0 ? feasible_.members()[idx] : infeasible_.members()[idx];
  };
  const Individual& p1 = parent();
  const Individual& p2 = parent();
  GiantTour child_tour = ox_crossover(p1.tour, p2.tour, rng_);
  Individual child = make_individual(std::move(child_tour));

  if (!child.feasible()) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < cfg_.p_rep) {
      VrpSolution repaired =
          repair(child.solution, inst_, pp_, c_, conv_, neighbors_, rng_);
      child = individual_from_solution(std::move(repaired));
    }
  }
  bool improved = false;
  if (count_insertions_) ++insertions_made_;
  note_best(child, &improved);
  insert_individual(std::move(child));
  return improved;
}

struct HgsSolver::Snapshot {
  std::vector<Individual> feasible;
  std::vector<Individual> infeasible;
  PenaltyParams pp;
  std::mt19937_64 rng;
  std::vector<FeasibilityRecord> window;
  long since_adapt = 0;
  long next_id = 0;
};

void HgsSolver::restore(const Snapshot& snap) {
  pp_ = snap.pp;
  rng_ = snap.rng;
  window_ = snap.window;
  since_adapt_ = snap.since_adapt;
  next_id_ = snap.next_id;
  feasible_.clear();
  infeasible_.clear();

  // Re-classify everything against the new constraint; solutions that lose
  // feasibility get a repair attempt before joining a sub-population.
  std::vector<Individual> all;
  all.reserve(snap.feasible.size() + snap.infeasible.size());
  for (const Individual& ind : snap.feasible) all.push_back(ind);
  for (const Individual& ind : snap.infeasible) all.push_back(ind);
  for (Individual& ind : all) {
    const bool was_feasible = ind.feasible();
    classify(ind);
    if (was_feasible && !ind.feasible()) {
      VrpSolution repaired = repair(ind.solution, inst_, pp_, c_, conv_, neighbors_, rng_);
      Individual redone = individual_from_solution(std::move(repaired));
      note_best(redone, nullptr);
      insert_individual(std::move(redone));
    } else {
      note_best(ind, nullptr);
      insert_individual(std::move(ind));
    }
  }
}

StateHandle HgsSolver::snapshot() const {
  auto snap = std::make_shared<Snapshot>();
  snap->feasible = feasible_.members();
  snap->infeasible = infeasible_.members();
  snap->pp = pp_;
  snap->rng = rng_;
  snap->window = window_;
  snap->since_adapt = since_adapt_;
  snap->next_id = next_id_;
  return StateHandle(snap);
}

SolverResponse<VrpSolution> HgsSolver::solve(const SolverRequest& req) {
  c_ = req.f2_limit;
  best_found_.reset();
  insertions_made_ = 0;
  best_found_at_ = 0;
  count_insertions_ = false;  // inherited individuals count as index 0

  if (req.warm_state) {
    restore(*std::static_pointer_cast<const Snapshot>(req.warm_state));
    slots_ = derive_slots();  // free fleet: one spare beyond the restored best
    count_insertions_ = true;
  } else {
    feasible_.clear();
    infeasible_.clear();
    window_.clear();
    since_adapt_ = 0;
    pp_ = initial_penalties();
    slots_ = derive_slots();
    count_insertions_ = true;
    seed_random(cfg_.mu);
  }
  seed_random(cfg_.lambda);  // per-sub-problem diversification

  long no_improve = 0;
  while (no_improve < req.iteration_budget) {
    if (evolve_generation()) {
      no_improve = 0;
    } else {
      ++no_improve;
    }
  }

  SolverResponse<VrpSolution> resp;
  resp.best = best_found_;
  for (const Individual& ind : feasible_.members()) {
    resp.harvested.push_back({ind.solution, ind.objectives});
  }
  resp.state = snapshot();
  return resp;
}

}  // namespace hrs
