#include "hrs/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hrs {

namespace {
constexpr double kHuge = std::numeric_limits<double>::infinity();
}

std::vector<ObjectivePoint> non_dominated_filter(std::span<const ObjectivePoint> points) {
  std::vector<ObjectivePoint> front;
  for (const ObjectivePoint& p : points) {
    bool rejected = false;
    for (const ObjectivePoint& kept : front) {
      if (dominates(kept, p, 0.0) || kept == p) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    std::erase_if(front, [&](const ObjectivePoint& kept) { return dominates(p, kept, 0.0); });
    front.push_back(p);
  }
  std::sort(front.begin(), front.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
  });
  return front;
}

ReferencePoint compute_reference_point(std::span<const std::vector<ObjectivePoint>> sets) {
  bool any = false;
  double max1 = -kHuge, min1 = kHuge;
  double max2 = -kHuge, min2 = kHuge;
  for (const auto& set : sets) {
    for (const ObjectivePoint& p : set) {
      any = true;
      max1 = std::max(max1, p.f1);
      min1 = std::min(min1, p.f1);
      max2 = std::max(max2, p.f2);
      min2 = std::min(min2, p.f2);
    }
  }
  if (!any) throw std::invalid_argument("reference point over an empty union of sets");
  return {max1 + 0.01 * (max1 - min1), max2 + 0.01 * (max2 - min2)};
}

double hypervolume(std::span<const ObjectivePoint> set, const ReferencePoint& ref) {
  for (const ObjectivePoint& p : set) {
    if (p.f1 > ref.f1 || p.f2 > ref.f2)
      throw std::invalid_argument("hypervolume: point outside the reference box");
  }
  const std::vector<ObjectivePoint> front = non_dominated_filter(set);
  double area = 0.0;
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double next_f1 = (i + 1 < front.size()) ? front[i + 1].f1 : ref.f1;
    area += (next_f1 - front[i].f1) * (ref.f2 - front[i].f2);
  }
  return area;
}

namespace {

struct AxisMap {
  double lo = 0.0;
  double hi = 0.0;

  double apply(double v) const {
    if (hi <= lo) return 1.0;
    return 1.0 + (v - lo) / (hi - lo);
  }
};

}  // namespace

std::pair<std::vector<ObjectivePoint>, std::vector<ObjectivePoint>> normalize_sets(
    std::span<const ObjectivePoint> approx, std::span<const ObjectivePoint> reference) {
  AxisMap m1{kHuge, -kHuge};
  AxisMap m2{kHuge, -kHuge};
  auto widen = [&](const ObjectivePoint& p) {
    m1.lo = std::min(m1.lo, p.f1);
    m1.hi = std::max(m1.hi, p.f1);
    m2.lo = std::min(m2.lo, p.f2);
    m2.hi = std::max(m2.hi, p.f2);
  };
  for (const ObjectivePoint& p : approx) widen(p);
  for (const ObjectivePoint& p : reference) widen(p);

  auto map_set = [&](std::span<const ObjectivePoint> in) {
    std::vector<ObjectivePoint> out;
    out.reserve(in.size());
    for (const ObjectivePoint& p : in) out.push_back({m1.apply(p.f1), m2.apply(p.f2)});
    return out;
  };
  return {map_set(approx), map_set(reference)};
}

double unary_epsilon(std::span<const ObjectivePoint> approx,
                     std::span<const ObjectivePoint> reference) {
  if (approx.empty()) throw std::invalid_argument("unary epsilon of an empty approximation");
  double eps = 1.0;
  for (const ObjectivePoint& r : reference) {
    double best = kHuge;
    for (const ObjectivePoint& a : approx) {
      best = std::min(best, std::max(a.f1 / r.f1, a.f2 / r.f2));
    }
    eps = std::max(eps, best);
  }
  return eps;
}

IndicatorReport indicator_report(std::span<const ObjectivePoint> approx,
                                 std::span<const ObjectivePoint> reference) {
  const std::vector<ObjectivePoint> a = non_dominated_filter(approx);
  const std::vector<ObjectivePoint> r = non_dominated_filter(reference);
  const std::vector<ObjectivePoint> sets[] = {a, r};
  const ReferencePoint ref = compute_reference_point(sets);

  IndicatorReport report;
  report.cardinality = a.size();
  report.hypervolume_abs = hypervolume(a, ref);
  const double ref_hv = hypervolume(r, ref);
  report.hypervolume_pct =
      ref_hv > 0.0 ? std::min(100.0, 100.0 * report.hypervolume_abs / ref_hv) : 100.0;
  auto [an, rn] = normalize_sets(a, r);
  report.unary_epsilon = unary_epsilon(an, rn);
  return report;
}

}  // namespace hrs
