#include "hrs/local_search.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace hrs {

std::vector<std::vector<int>> build_neighbor_lists(const Instance& inst, int granularity) {
  const int n = static_cast<int>(inst.num_customers());
  const int g = std::min(granularity, n - 1);
  std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n) + 1);
  std::vector<int> others;
  for (int u = 1; u <= n; ++u) {
    others.clear();
    for (int v = 1; v <= n; ++v) {
      if (v != u) others.push_back(v);
    }
    std::stable_sort(others.begin(), others.end(), [&](int a, int b) {
      return inst.dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)] <
             inst.dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(b)];
    });
    if (g >= 0 && static_cast<std::size_t>(g) < others.size()) others.resize(static_cast<std::size_t>(g));
    nbr[static_cast<std::size_t>(u)] = others;
  }
  return nbr;
}

namespace {

constexpr double kAccept = 1e-9;

class MoveEngine {
 public:
  MoveEngine(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp, double c,
             FleetConvention conv, const std::vector<std::vector<int>>& nbr,
             std::mt19937_64& rng, LsStats* stats)
      : inst_(inst),
        pp_(pp),
        c_(c),
        conv_(conv),
        nbr_(nbr),
        rng_(rng),
        stats_(stats),
        routes_(s.routes) {
    const std::size_t n = inst.num_customers();
    route_of_.assign(n + 1, -1);
    pos_of_.assign(n + 1, -1);
    rlen_.resize(routes_.size());
    rload_.resize(routes_.size());
    plen_.resize(routes_.size());
    pload_.resize(routes_.size());
    rstamp_.assign(routes_.size(), 0);
    tested_.assign(n + 1, -1);
    for (std::size_t r = 0; r < routes_.size(); ++r) rebuild_route(static_cast<int>(r));
    VrpSolution view{routes_, rlen_, rload_};
    lens_.build(view, conv_);
    cost_ = cost_from_caches();
    coupled_ = c_ < kInf && pp_.w_bal > 0.0;
    refresh_first_empty();
    if (stats_ && stats_->check_deltas) last_full_ = full_cost();
  }

  void run() {
    order_.resize(inst_.num_customers());
    std::iota(order_.begin(), order_.end(), 1);
    std::shuffle(order_.begin(), order_.end(), rng_);
    while (true) {
      while (sweep(true)) {
      }
      // The balance term couples all routes, so a granular pass guarded by
      // route stamps can miss moves whose balance delta changed; certify
      // with one unguarded pass before stopping.
      if (!coupled_ || !sweep(false)) break;
    }
  }

  VrpSolution take() {
    VrpSolution out;
    out.routes = std::move(routes_);
    out.route_lengths = std::move(rlen_);
    out.route_loads = std::move(rload_);
    return out;
  }

 private:
  const Instance& inst_;
  const PenaltyParams& pp_;
  double c_;
  FleetConvention conv_;
  const std::vector<std::vector<int>>& nbr_;
  std::mt19937_64& rng_;
  LsStats* stats_;

  std::vector<std::vector<int>> routes_;
  std::vector<double> rlen_, rload_;
  std::vector<std::vector<double>> plen_, pload_;  // prefix incl. node at index
  std::vector<int> route_of_, pos_of_;
  RouteLengthSet lens_;
  double cost_ = 0.0;
  bool coupled_ = false;
  int first_empty_ = -1;
  std::vector<int> order_;
  std::vector<long> rstamp_;
  std::vector<long> tested_;
  long clock_ = 0;
  double last_full_ = 0.0;

  double d(int a, int b) const {
    return inst_.dist[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  double sv(int u) const { return inst_.service_contribution(u); }
  double dem(int u) const { return inst_.demand_of(u); }
  int cnt(int r) const { return static_cast<int>(routes_[static_cast<std::size_t>(r)].size()); }
  int at(int r, int pos) const { return routes_[static_cast<std::size_t>(r)][static_cast<std::size_t>(pos)]; }
  int prev_of(int r, int pos) const { return pos > 0 ? at(r, pos - 1) : 0; }
  int next_of(int r, int pos) const { return pos + 1 < cnt(r) ? at(r, pos + 1) : 0; }
  bool active(int count) const { return conv_ == FleetConvention::Fixed || count > 0; }

  double cap_pen(double load) const { return pp_.w_cap * std::max(0.0, load - inst_.capacity); }
  double dur_pen(double len) const {
    return inst_.has_duration_limit() ? pp_.w_dur * std::max(0.0, len - inst_.max_duration)
                                      : 0.0;
  }

  double cost_from_caches() const {
    double total = 0.0;
    for (std::size_t r = 0; r < routes_.size(); ++r) {
      total += rlen_[r] + cap_pen(rload_[r]) + dur_pen(rlen_[r]);
    }
    if (c_ < kInf) total += pp_.w_bal * std::max(0.0, lens_.range() - c_);
    return total;
  }

  double full_cost() const {
    VrpSolution view{routes_, rlen_, rload_};
    return penalized_cost(view, inst_, pp_, c_, conv_);
  }

  void rebuild_route(int r) {
    const auto& seq = routes_[static_cast<std::size_t>(r)];
    auto& pl = plen_[static_cast<std::size_t>(r)];
    auto& pd = pload_[static_cast<std::size_t>(r)];
    pl.resize(seq.size());
    pd.resize(seq.size());
    double len = 0.0, load = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      len += d(i == 0 ? 0 : seq[i - 1], seq[i]) + sv(seq[i]);
      load += dem(seq[i]);
      pl[i] = len;
      pd[i] = load;
      route_of_[static_cast<std::size_t>(seq[i])] = r;
      pos_of_[static_cast<std::size_t>(seq[i])] = static_cast<int>(i);
    }
    rlen_[static_cast<std::size_t>(r)] = seq.empty() ? 0.0 : len + d(seq.back(), 0);
    rload_[static_cast<std::size_t>(r)] = load;
  }

  void refresh_first_empty() {
    first_empty_ = -1;
    for (std::size_t r = 0; r < routes_.size(); ++r) {
      if (routes_[r].empty()) {
        first_empty_ = static_cast<int>(r);
        break;
      }
    }
  }

  // Penalized-cost change if route r1 (and optionally r2) took the given new
  // lengths/loads. Balance handled through the sorted length set.
  double assemble(int r1, double nl1, double nload1, int ncnt1, int r2 = -1, double nl2 = 0.0,
                  double nload2 = 0.0, int ncnt2 = 0) const {
    const auto idx1 = static_cast<std::size_t>(r1);
    double delta = (nl1 - rlen_[idx1]) + cap_pen(nload1) - cap_pen(rload_[idx1]) +
                   dur_pen(nl1) - dur_pen(rlen_[idx1]);
    if (r2 >= 0) {
      const auto idx2 = static_cast<std::size_t>(r2);
      delta += (nl2 - rlen_[idx2]) + cap_pen(nload2) - cap_pen(rload_[idx2]) + dur_pen(nl2) -
               dur_pen(rlen_[idx2]);
    }
    if (coupled_) {
      if (r2 >= 0) {
        delta += delta_balance_penalty(lens_, pp_.w_bal, c_, rlen_[idx1], active(cnt(r1)), nl1,
                                       active(ncnt1), rlen_[static_cast<std::size_t>(r2)],
                                       active(cnt(r2)), nl2, active(ncnt2));
      } else {
        delta += delta_balance_penalty(lens_, pp_.w_bal, c_, rlen_[idx1], active(cnt(r1)), nl1,
                                       active(ncnt1));
      }
    }
    return delta;
  }

  void note_eval() {
    if (stats_) ++stats_->evaluated;
  }

  void commit(int r1, std::vector<int> seq1, int r2, std::vector<int> seq2, double predicted) {
    const auto idx1 = static_cast<std::size_t>(r1);
    const double old1 = rlen_[idx1];
    const bool act1 = active(cnt(r1));
    double old2 = 0.0;
    bool act2 = false;
    if (r2 >= 0) {
      old2 = rlen_[static_cast<std::size_t>(r2)];
      act2 = active(cnt(r2));
    }
    routes_[idx1] = std::move(seq1);
    rebuild_route(r1);
    lens_.replace(old1, act1, rlen_[idx1], active(cnt(r1)));
    if (r2 >= 0) {
      const auto idx2 = static_cast<std::size_t>(r2);
      routes_[idx2] = std::move(seq2);
      rebuild_route(r2);
      lens_.replace(old2, act2, rlen_[idx2], active(cnt(r2)));
    }
    cost_ = cost_from_caches();
    ++clock_;
    rstamp_[idx1] = clock_;
    if (r2 >= 0) rstamp_[static_cast<std::size_t>(r2)] = clock_;
    refresh_first_empty();
    if (stats_) {
      ++stats_->accepted;
      stats_->accepted_costs.push_back(cost_);
      if (stats_->check_deltas) {
        const double now_full = full_cost();
        stats_->max_delta_error =
            std::max(stats_->max_delta_error, std::abs((now_full - last_full_) - predicted));
        last_full_ = now_full;
      }
    }
  }

  // Value-walk rebuilders. `emit` maps each original customer to what replaces
  // it, letting one code path serve intra- and inter-route variants.
  static std::vector<int> walk(const std::vector<int>& seq, auto&& emit) {
    std::vector<int> out;
    out.reserve(seq.size() + 2);
    for (int w : seq) emit(out, w);
    return out;
  }

  bool try_relocate_single(int u, int v, bool before) {
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int rv = route_of_[static_cast<std::size_t>(v)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int pv = pos_of_[static_cast<std::size_t>(v)];
    const int prev_u = prev_of(ru, pu);
    const int next_u = next_of(ru, pu);
    int anchor, ins_next;
    if (before) {
      const int prev_v = prev_of(rv, pv);
      if (prev_v == u) return false;
      anchor = prev_v;
      ins_next = v;
    } else {
      if (v == prev_u) return false;
      anchor = v;
      ins_next = next_of(rv, pv);
    }
    note_eval();
    const double removal = d(prev_u, next_u) - d(prev_u, u) - d(u, next_u);
    const double insertion = d(anchor, u) + d(u, ins_next) - d(anchor, ins_next);
    double delta;
    double nl1, nl2 = 0.0;
    if (ru == rv) {
      nl1 = rlen_[static_cast<std::size_t>(ru)] + removal + insertion;
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)], cnt(ru));
    } else {
      nl1 = rlen_[static_cast<std::size_t>(ru)] + removal - sv(u);
      nl2 = rlen_[static_cast<std::size_t>(rv)] + insertion + sv(u);
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)] - dem(u), cnt(ru) - 1, rv,
                       nl2, rload_[static_cast<std::size_t>(rv)] + dem(u), cnt(rv) + 1);
    }
    if (delta >= -kAccept) return false;

    auto emit = [&](std::vector<int>& out, int w) {
      if (w == u) return;
      if (before && w == v) out.push_back(u);
      out.push_back(w);
      if (!before && w == v) out.push_back(u);
    };
    if (ru == rv) {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), -1, {}, delta);
    } else {
      auto remove_only = [&](std::vector<int>& out, int w) {
        if (w != u) out.push_back(w);
      };
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], remove_only), rv,
             walk(routes_[static_cast<std::size_t>(rv)], emit), delta);
    }
    return true;
  }

  bool try_relocate_pair(int u, int v, bool reversed) {
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int x = next_of(ru, pu);
    if (x == 0) return false;
    if (v == x) return false;
    const int rv = route_of_[static_cast<std::size_t>(v)];
    const int pv = pos_of_[static_cast<std::size_t>(v)];
    const int prev_u = prev_of(ru, pu);
    if (v == prev_u && !reversed) return false;
    const int nxt = pu + 2 < cnt(ru) ? at(ru, pu + 2) : 0;
    const int next_v = next_of(rv, pv);
    const int ins_next = (next_v == u) ? nxt : next_v;
    note_eval();
    const double removal = d(prev_u, nxt) - d(prev_u, u) - d(u, x) - d(x, nxt);
    const double insertion = reversed
                                 ? d(v, x) + d(x, u) + d(u, ins_next) - d(v, ins_next)
                                 : d(v, u) + d(u, x) + d(x, ins_next) - d(v, ins_next);
    double delta;
    double nl1, nl2 = 0.0;
    if (ru == rv) {
      nl1 = rlen_[static_cast<std::size_t>(ru)] + removal + insertion;
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)], cnt(ru));
    } else {
      nl1 = rlen_[static_cast<std::size_t>(ru)] + removal - sv(u) - sv(x);
      nl2 = rlen_[static_cast<std::size_t>(rv)] + insertion + sv(u) + sv(x);
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)] - dem(u) - dem(x),
                       cnt(ru) - 2, rv, nl2,
                       rload_[static_cast<std::size_t>(rv)] + dem(u) + dem(x), cnt(rv) + 2);
    }
    if (delta >= -kAccept) return false;

    auto emit = [&](std::vector<int>& out, int w) {
      if (w == u || w == x) return;
      out.push_back(w);
      if (w == v) {
        if (reversed) {
          out.push_back(x);
          out.push_back(u);
        } else {
          out.push_back(u);
          out.push_back(x);
        }
      }
    };
    if (ru == rv) {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), -1, {}, delta);
    } else {
      auto remove_only = [&](std::vector<int>& out, int w) {
        if (w != u && w != x) out.push_back(w);
      };
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], remove_only), rv,
             walk(routes_[static_cast<std::size_t>(rv)], emit), delta);
    }
    return true;
  }

  bool try_swap11(int u, int v) {
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int rv = route_of_[static_cast<std::size_t>(v)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int pv = pos_of_[static_cast<std::size_t>(v)];
    const int prev_u = prev_of(ru, pu), next_u = next_of(ru, pu);
    const int prev_v = prev_of(rv, pv), next_v = next_of(rv, pv);
    note_eval();
    double delta;
    double nl1, nl2 = 0.0;
    if (ru == rv) {
      double dl;
      if (next_u == v) {
        dl = d(prev_u, v) + d(u, next_v) - d(prev_u, u) - d(v, next_v);
      } else if (next_v == u) {
        dl = d(prev_v, u) + d(v, next_u) - d(prev_v, v) - d(u, next_u);
      } else {
        dl = d(prev_u, v) + d(v, next_u) - d(prev_u, u) - d(u, next_u) + d(prev_v, u) +
             d(u, next_v) - d(prev_v, v) - d(v, next_v);
      }
      nl1 = rlen_[static_cast<std::size_t>(ru)] + dl;
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)], cnt(ru));
    } else {
      nl1 = rlen_[static_cast<std::size_t>(ru)] + d(prev_u, v) + d(v, next_u) - d(prev_u, u) -
            d(u, next_u) + sv(v) - sv(u);
      nl2 = rlen_[static_cast<std::size_t>(rv)] + d(prev_v, u) + d(u, next_v) - d(prev_v, v) -
            d(v, next_v) + sv(u) - sv(v);
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)] - dem(u) + dem(v),
                       cnt(ru), rv, nl2,
                       rload_[static_cast<std::size_t>(rv)] - dem(v) + dem(u), cnt(rv));
    }
    if (delta >= -kAccept) return false;
    auto emit = [&](std::vector<int>& out, int w) {
      if (w == u)
        out.push_back(v);
      else if (w == v)
        out.push_back(u);
      else
        out.push_back(w);
    };
    if (ru == rv) {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), -1, {}, delta);
    } else {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), rv,
             walk(routes_[static_cast<std::size_t>(rv)], emit), delta);
    }
    return true;
  }

  bool try_swap21(int u, int v) {
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int x = next_of(ru, pu);
    if (x == 0 || v == x) return false;
    const int rv = route_of_[static_cast<std::size_t>(v)];
    const int pv = pos_of_[static_cast<std::size_t>(v)];
    const int prev_u = prev_of(ru, pu);
    const int nxt = pu + 2 < cnt(ru) ? at(ru, pu + 2) : 0;
    const int prev_v = prev_of(rv, pv), next_v = next_of(rv, pv);
    note_eval();
    double delta;
    double nl1, nl2 = 0.0;
    if (ru == rv) {
      double dl;
      if (v == nxt) {
        dl = d(prev_u, v) + d(v, u) + d(x, next_v) - d(prev_u, u) - d(x, v) - d(v, next_v);
      } else if (v == prev_u) {
        dl = d(prev_v, u) + d(x, v) + d(v, nxt) - d(prev_v, v) - d(v, u) - d(x, nxt);
      } else {
        dl = d(prev_u, v) + d(v, nxt) - d(prev_u, u) - d(x, nxt) + d(prev_v, u) +
             d(x, next_v) - d(prev_v, v) - d(v, next_v);
      }
      nl1 = rlen_[static_cast<std::size_t>(ru)] + dl;
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)], cnt(ru));
    } else {
      nl1 = rlen_[static_cast<std::size_t>(ru)] - d(prev_u, u) - d(u, x) - d(x, nxt) - sv(u) -
            sv(x) + d(prev_u, v) + d(v, nxt) + sv(v);
      nl2 = rlen_[static_cast<std::size_t>(rv)] - d(prev_v, v) - d(v, next_v) - sv(v) +
            d(prev_v, u) + d(u, x) + d(x, next_v) + sv(u) + sv(x);
      delta = assemble(ru, nl1,
                       rload_[static_cast<std::size_t>(ru)] - dem(u) - dem(x) + dem(v),
                       cnt(ru) - 1, rv, nl2,
                       rload_[static_cast<std::size_t>(rv)] - dem(v) + dem(u) + dem(x),
                       cnt(rv) + 1);
    }
    if (delta >= -kAccept) return false;
    auto emit = [&](std::vector<int>& out, int w) {
      if (w == u) {
        out.push_back(v);
      } else if (w == x) {
        // consumed by the pair move
      } else if (w == v) {
        out.push_back(u);
        out.push_back(x);
      } else {
        out.push_back(w);
      }
    };
    if (ru == rv) {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), -1, {}, delta);
    } else {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), rv,
             walk(routes_[static_cast<std::size_t>(rv)], emit), delta);
    }
    return true;
  }

  bool try_swap22(int u, int v) {
    int ru = route_of_[static_cast<std::size_t>(u)];
    int rv = route_of_[static_cast<std::size_t>(v)];
    int pu = pos_of_[static_cast<std::size_t>(u)];
    int pv = pos_of_[static_cast<std::size_t>(v)];
    if (ru == rv && pv < pu) {
      std::swap(u, v);
      std::swap(ru, rv);
      std::swap(pu, pv);
    }
    const int x = next_of(ru, pu);
    const int y = next_of(rv, pv);
    if (x == 0 || y == 0) return false;
    if (v == x || y == u || v == u) return false;
    const int prev_u = prev_of(ru, pu);
    const int nxt = pu + 2 < cnt(ru) ? at(ru, pu + 2) : 0;
    const int prev_v = prev_of(rv, pv);
    const int ny = pv + 2 < cnt(rv) ? at(rv, pv + 2) : 0;
    note_eval();
    double delta;
    double nl1, nl2 = 0.0;
    if (ru == rv) {
      double dl;
      if (v == nxt) {
        dl = d(prev_u, v) + d(y, u) + d(x, ny) - d(prev_u, u) - d(x, v) - d(y, ny);
      } else {
        dl = d(prev_u, v) + d(y, nxt) - d(prev_u, u) - d(x, nxt) + d(prev_v, u) + d(x, ny) -
             d(prev_v, v) - d(y, ny);
      }
      nl1 = rlen_[static_cast<std::size_t>(ru)] + dl;
      delta = assemble(ru, nl1, rload_[static_cast<std::size_t>(ru)], cnt(ru));
    } else {
      nl1 = rlen_[static_cast<std::size_t>(ru)] - d(prev_u, u) - d(u, x) - d(x, nxt) - sv(u) -
            sv(x) + d(prev_u, v) + d(v, y) + d(y, nxt) + sv(v) + sv(y);
      nl2 = rlen_[static_cast<std::size_t>(rv)] - d(prev_v, v) - d(v, y) - d(y, ny) - sv(v) -
            sv(y) + d(prev_v, u) + d(u, x) + d(x, ny) + sv(u) + sv(x);
      delta = assemble(
          ru, nl1, rload_[static_cast<std::size_t>(ru)] - dem(u) - dem(x) + dem(v) + dem(y),
          cnt(ru), rv, nl2,
          rload_[static_cast<std::size_t>(rv)] - dem(v) - dem(y) + dem(u) + dem(x), cnt(rv));
    }
    if (delta >= -kAccept) return false;
    auto emit = [&](std::vector<int>& out, int w) {
      if (w == u)
        out.push_back(v);
      else if (w == x)
        out.push_back(y);
      else if (w == v)
        out.push_back(u);
      else if (w == y)
        out.push_back(x);
      else
        out.push_back(w);
    };
    if (ru == rv) {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), -1, {}, delta);
    } else {
      commit(ru, walk(routes_[static_cast<std::size_t>(ru)], emit), rv,
             walk(routes_[static_cast<std::size_t>(rv)], emit), delta);
    }
    return true;
  }

  bool try_two_opt_intra(int u, int v) {
    const int r = route_of_[static_cast<std::size_t>(u)];
    int i = pos_of_[static_cast<std::size_t>(u)];
    int j = pos_of_[static_cast<std::size_t>(v)];
    if (i > j) std::swap(i, j);
    if (j <= i + 1) return false;
    const int a = at(r, i), b = at(r, j);
    const int na = at(r, i + 1);
    const int nb = j + 1 < cnt(r) ? at(r, j + 1) : 0;
    note_eval();
    const double dl = d(a, b) + d(na, nb) - d(a, na) - d(b, nb);
    const double nl = rlen_[static_cast<std::size_t>(r)] + dl;
    const double delta = assemble(r, nl, rload_[static_cast<std::size_t>(r)], cnt(r));
    if (delta >= -kAccept) return false;
    std::vector<int> seq = routes_[static_cast<std::size_t>(r)];
    std::reverse(seq.begin() + i + 1, seq.begin() + j + 1);
    commit(r, std::move(seq), -1, {}, delta);
    return true;
  }

  bool try_two_opt_star(int u, int v) {
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int rv = route_of_[static_cast<std::size_t>(v)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int pv = pos_of_[static_cast<std::size_t>(v)];
    const int xu = next_of(ru, pu);
    const int yv = next_of(rv, pv);
    if (xu == 0 && yv == 0) return false;
    note_eval();
    const auto iu = static_cast<std::size_t>(ru);
    const auto iv = static_cast<std::size_t>(rv);
    const double p_u = plen_[iu][static_cast<std::size_t>(pu)];
    const double p_v = plen_[iv][static_cast<std::size_t>(pv)];
    const double l_u = pload_[iu][static_cast<std::size_t>(pu)];
    const double l_v = pload_[iv][static_cast<std::size_t>(pv)];
    const double tail_u = rlen_[iu] - p_u - d(u, xu);
    const double tail_v = rlen_[iv] - p_v - d(v, yv);
    const double nl1 = p_u + d(u, yv) + tail_v;
    const double nl2 = p_v + d(v, xu) + tail_u;
    const double nload1 = l_u + (rload_[iv] - l_v);
    const double nload2 = l_v + (rload_[iu] - l_u);
    const int ncnt1 = (pu + 1) + (cnt(rv) - pv - 1);
    const int ncnt2 = (pv + 1) + (cnt(ru) - pu - 1);
    const double delta = assemble(ru, nl1, nload1, ncnt1, rv, nl2, nload2, ncnt2);
    if (delta >= -kAccept) return false;
    const auto& su = routes_[iu];
    const auto& svq = routes_[iv];
    std::vector<int> n1(su.begin(), su.begin() + pu + 1);
    n1.insert(n1.end(), svq.begin() + pv + 1, svq.end());
    std::vector<int> n2(svq.begin(), svq.begin() + pv + 1);
    n2.insert(n2.end(), su.begin() + pu + 1, su.end());
    commit(ru, std::move(n1), rv, std::move(n2), delta);
    return true;
  }

  bool try_two_opt_star_rev(int u, int v) {
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int rv = route_of_[static_cast<std::size_t>(v)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int pv = pos_of_[static_cast<std::size_t>(v)];
    const int xu = next_of(ru, pu);
    const int yv = next_of(rv, pv);
    note_eval();
    const auto iu = static_cast<std::size_t>(ru);
    const auto iv = static_cast<std::size_t>(rv);
    const double p_u = plen_[iu][static_cast<std::size_t>(pu)];
    const double p_v = plen_[iv][static_cast<std::size_t>(pv)];
    const double l_u = pload_[iu][static_cast<std::size_t>(pu)];
    const double l_v = pload_[iv][static_cast<std::size_t>(pv)];
    const double tail_u = rlen_[iu] - p_u - d(u, xu);
    const double tail_v = rlen_[iv] - p_v - d(v, yv);
    const double nl1 = p_u + d(u, v) + p_v;
    const double nl2 = tail_u + d(xu, yv) + tail_v;
    const double nload1 = l_u + l_v;
    const double nload2 = (rload_[iu] - l_u) + (rload_[iv] - l_v);
    const int ncnt1 = (pu + 1) + (pv + 1);
    const int ncnt2 = (cnt(ru) - pu - 1) + (cnt(rv) - pv - 1);
    const double delta = assemble(ru, nl1, nload1, ncnt1, rv, nl2, nload2, ncnt2);
    if (delta >= -kAccept) return false;
    const auto& su = routes_[iu];
    const auto& svq = routes_[iv];
    std::vector<int> n1(su.begin(), su.begin() + pu + 1);
    for (int i = pv; i >= 0; --i) n1.push_back(svq[static_cast<std::size_t>(i)]);
    std::vector<int> n2;
    for (int i = cnt(ru) - 1; i > pu; --i) n2.push_back(su[static_cast<std::size_t>(i)]);
    n2.insert(n2.end(), svq.begin() + pv + 1, svq.end());
    commit(ru, std::move(n1), rv, std::move(n2), delta);
    return true;
  }

  bool try_relocate_to_empty(int u) {
    if (first_empty_ < 0) return false;
    const int e = first_empty_;
    const int ru = route_of_[static_cast<std::size_t>(u)];
    const int pu = pos_of_[static_cast<std::size_t>(u)];
    const int prev_u = prev_of(ru, pu);
    const int next_u = next_of(ru, pu);
    const auto iu = static_cast<std::size_t>(ru);

    // single customer into the empty slot
    if (cnt(ru) > 1) {
      note_eval();
      const double nl1 = rlen_[iu] + d(prev_u, next_u) - d(prev_u, u) - d(u, next_u) - sv(u);
      const double nle = d(0, u) + d(u, 0) + sv(u);
      const double delta = assemble(ru, nl1, rload_[iu] - dem(u), cnt(ru) - 1, e, nle, dem(u), 1);
      if (delta < -kAccept) {
        auto remove_only = [&](std::vector<int>& out, int w) {
          if (w != u) out.push_back(w);
        };
        commit(ru, walk(routes_[iu], remove_only), e, {u}, delta);
        return true;
      }
    }
    // pair into the empty slot
    const int x = next_u;
    if (x != 0 && cnt(ru) > 2) {
      const int nxt = pu + 2 < cnt(ru) ? at(ru, pu + 2) : 0;
      note_eval();
      const double nl1 = rlen_[iu] + d(prev_u, nxt) - d(prev_u, u) - d(u, x) - d(x, nxt) -
                         sv(u) - sv(x);
      const double nle = d(0, u) + d(u, x) + d(x, 0) + sv(u) + sv(x);
      const double delta = assemble(ru, nl1, rload_[iu] - dem(u) - dem(x), cnt(ru) - 2, e, nle,
                                    dem(u) + dem(x), 2);
      if (delta < -kAccept) {
        auto remove_both = [&](std::vector<int>& out, int w) {
          if (w != u && w != x) out.push_back(w);
        };
        commit(ru, walk(routes_[iu], remove_both), e, {u, x}, delta);
        return true;
      }
    }
    return false;
  }

  bool scan_customer(int u, bool use_stamps) {
    const long last = tested_[static_cast<std::size_t>(u)];
    for (int v : nbr_[static_cast<std::size_t>(u)]) {
      const int ru = route_of_[static_cast<std::size_t>(u)];
      const int rv = route_of_[static_cast<std::size_t>(v)];
      if (use_stamps && rstamp_[static_cast<std::size_t>(ru)] <= last &&
          rstamp_[static_cast<std::size_t>(rv)] <= last) {
        continue;
      }
      if (try_relocate_single(u, v, false)) return true;
      if (try_relocate_single(u, v, true)) return true;
      if (try_relocate_pair(u, v, false)) return true;
      if (try_relocate_pair(u, v, true)) return true;
      if (try_swap11(u, v)) return true;
      if (try_swap21(u, v)) return true;
      if (try_swap22(u, v)) return true;
      if (ru == rv) {
        if (try_two_opt_intra(u, v)) return true;
      } else {
        if (try_two_opt_star(u, v)) return true;
        if (try_two_opt_star_rev(u, v)) return true;
      }
    }
    if (try_relocate_to_empty(u)) return true;
    tested_[static_cast<std::size_t>(u)] = clock_;
    return false;
  }

  bool sweep(bool use_stamps) {
    bool any = false;
    for (int u : order_) {
      if (scan_customer(u, use_stamps)) any = true;
    }
    return any;
  }
};

}  // namespace

VrpSolution local_search(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp,
                         double c, FleetConvention convention,
                         const std::vector<std::vector<int>>& neighbors,
                         std::mt19937_64& rng, LsStats* stats) {
  MoveEngine engine(s, inst, pp, c, convention, neighbors, rng, stats);
  engine.run();
  return engine.take();
}

VrpSolution local_search(const VrpSolution& s, const Instance& inst, const PenaltyParams& pp,
                         double c, FleetConvention convention, int granularity,
                         std::mt19937_64& rng, LsStats* stats) {
  const auto neighbors = build_neighbor_lists(inst, granularity);
  return local_search(s, inst, pp, c, convention, neighbors, rng, stats);
}

}  // namespace hrs
