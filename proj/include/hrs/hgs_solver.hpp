#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hrs/hrs_core.hpp"
#include "hrs/local_search.hpp"
#include "hrs/split.hpp"
#include "hrs/vrp_model.hpp"

namespace hrs {

struct HgsConfig {
  int mu = 25;        // minimum sub-population size
  int lambda = 40;    // growth above mu before survivor selection
  int elite = 10;     // best-cost individuals protected from culling
  double xi_ref = 0.4;  // target feasible proportion
  int n_close = 5;    // neighbors considered for the diversity contribution
  double p_rep = 0.5;   // repair rate for infeasible offspring
  int granularity = 40;
  long i0 = 10000;    // iterations without improvement, first sub-problem
  long i_n = 500;     // iterations without improvement, later sub-problems
};

struct Individual {
  long id = 0;
  GiantTour tour;
  VrpSolution solution;
  ObjectivePoint objectives;
  double cost = 0.0;  // penalized cost at the (pp, c) it was evaluated with
  bool cap_ok = true;
  bool dur_ok = true;
  bool bal_ok = true;
  std::vector<std::uint32_t> edges;  // sorted undirected adjacency keys

  bool feasible() const { return cap_ok && dur_ok && bal_ok; }
};

/// Sorted undirected adjacency keys of a route plan, depot edges included.
std::vector<std::uint32_t> edge_keys(const VrpSolution& s, std::size_t num_customers);

/// Number of adjacencies present in exactly one of the two plans, divided by
/// `norm` (customers + fleet size).
double broken_pairs_distance(std::span<const std::uint32_t> a,
                             std::span<const std::uint32_t> b, double norm);
double broken_pairs_distance(const VrpSolution& a, const VrpSolution& b,
                             std::size_t num_customers, double norm);

/// Order crossover: the child keeps p1's segment [cut1..cut2] and fills the
/// remaining positions with p2's customers in p2 order, starting after cut2
/// and wrapping, skipping duplicates.
GiantTour ox_crossover(const GiantTour& p1, const GiantTour& p2, std::size_t cut1,
                       std::size_t cut2);
GiantTour ox_crossover(const GiantTour& p1, const GiantTour& p2, std::mt19937_64& rng);

/// Feasibility history of recently inserted individuals, one flag per
/// constraint (capacity, duration, balance).
using FeasibilityRecord = std::array<bool, 3>;

/// One multiplicative adaptation step per constraint: scarce feasibility
/// raises the penalty by 1.2, abundant feasibility lowers it by 0.85, with a
/// +-0.05 dead zone around xi_ref and clamping to [1e-2, 1e5].
PenaltyParams adapt_penalties(const PenaltyParams& pp,
                              std::span<const FeasibilityRecord> window, double xi_ref);

/// A feasible or infeasible sub-population with cached pairwise broken-pairs
/// distances.
class SubPopulation {
 public:
  explicit SubPopulation(double distance_norm = 1.0) : norm_(distance_norm) {}

  void insert(Individual ind);
  void remove(std::size_t index);
  void clear();

  std::size_t size() const { return members_.size(); }
  const std::vector<Individual>& members() const { return members_; }

  /// Mean broken-pairs distance to the n_close closest members.
  double diversity_contribution(std::size_t index, int n_close) const;

  /// Rank by cost plus (1 - elite/size) times rank by diversity; lower is
  /// better. The best-cost elite can never hold the worst value.
  std::vector<double> biased_fitness(int elite, int n_close) const;

  /// Removes worst-biased-fitness members, never a cost-elite, until `target`
  /// members remain.
  void cull_to(std::size_t target, int elite, int n_close);

  double distance_norm() const { return norm_; }

 private:
  double norm_;
  std::vector<Individual> members_;
  std::vector<std::vector<double>> dist_;
};

/// Binary tournament on biased fitness over the union of both
/// sub-populations; returns (population 0/1, index).
std::pair<int, std::size_t> binary_tournament(std::span<const double> bf_feasible,
                                              std::span<const double> bf_infeasible,
                                              std::mt19937_64& rng);

/// Local search with penalties raised x10, then x100 of the original if the
/// result still violates any constraint. Returns the last solution found,
/// feasible or not.
VrpSolution repair(const VrpSolution& s, const Instance& inst, const PenaltyParams& base,
                   double c, FleetConvention convention,
                   const std::vector<std::vector<int>>& neighbors, std::mt19937_64& rng);

/// Hybrid genetic search over giant tours, adapted to epsilon-constraint
/// sub-problems: a balance penalty keeps the constraint soft during the
/// search, populations and penalties survive across sub-problems through
/// snapshot handles, and every feasible individual is harvested.
class HgsSolver {
 public:
  using Solution = VrpSolution;

  HgsSolver(const Instance& inst, HgsConfig cfg, FleetConvention convention,
            std::uint64_t seed);

  SolverResponse<VrpSolution> solve(const SolverRequest& req);

  const HgsConfig& config() const { return cfg_; }
  const PenaltyParams& penalties() const { return pp_; }

  /// Individuals inserted by the last solve() (seeds, injections, offspring)
  /// and the insertion index that produced the returned best; 0 means the
  /// best was inherited from the warm-start population.
  long insertions_made() const { return insertions_made_; }
  long best_found_at() const { return best_found_at_; }

 private:
  struct Snapshot;

  const Instance& inst_;
  HgsConfig cfg_;
  FleetConvention conv_;
  std::mt19937_64 rng_;
  std::vector<std::vector<int>> neighbors_;
  double distance_norm_;

  PenaltyParams pp_;
  SubPopulation feasible_;
  SubPopulation infeasible_;
  std::vector<FeasibilityRecord> window_;
  long since_adapt_ = 0;
  long next_id_ = 0;
  double c_ = kInf;
  int slots_ = 1;

  std::optional<SolverResult<VrpSolution>> best_found_;
  long insertions_made_ = 0;
  long best_found_at_ = 0;
  bool count_insertions_ = false;

  PenaltyParams initial_penalties() const;
  int derive_slots() const;
  Individual make_individual(GiantTour tour);
  Individual individual_from_solution(VrpSolution s);
  void classify(Individual& ind) const;
  void insert_individual(Individual ind);
  void note_best(const Individual& ind, bool* improved);
  bool evolve_generation();
  void seed_random(int count);
  void restore(const Snapshot& snap);
  StateHandle snapshot() const;
};

}  // namespace hrs
