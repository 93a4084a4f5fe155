#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hrs/objective_space.hpp"

namespace hrs {

/// Corner of the dominated-area computation; must be weakly dominated by
/// every point it is used with.
struct ReferencePoint {
  double f1 = 0.0;
  double f2 = 0.0;
};

struct IndicatorReport {
  double hypervolume_abs = 0.0;
  double hypervolume_pct = 0.0;  // vs the reference set, in [0, 100]
  double unary_epsilon = 1.0;
  std::size_t cardinality = 0;
};

/// Per axis: maximum over the union of all sets, incremented by 1% of that
/// axis's range (a zero range adds nothing). Throws on an empty union.
ReferencePoint compute_reference_point(std::span<const std::vector<ObjectivePoint>> sets);

/// 2-D dominated area between the non-dominated subset of `set` and `ref`.
/// Throws std::invalid_argument if a point falls outside the reference box.
double hypervolume(std::span<const ObjectivePoint> set, const ReferencePoint& ref);

/// Affine per-axis map sending the union's [min, max] to [1, 2]; an axis with
/// zero range maps to the constant 1.
std::pair<std::vector<ObjectivePoint>, std::vector<ObjectivePoint>> normalize_sets(
    std::span<const ObjectivePoint> approx, std::span<const ObjectivePoint> reference);

/// Multiplicative unary epsilon on normalized sets: the smallest factor by
/// which every reference point must be relaxed so that some approximation
/// point weakly dominates it. Floored at 1. Throws on an empty approximation.
double unary_epsilon(std::span<const ObjectivePoint> approx,
                     std::span<const ObjectivePoint> reference);

/// Full report of an approximation against a reference set: shared reference
/// point from the union, hypervolume percentage, normalized unary epsilon,
/// and cardinality of the non-dominated subset.
IndicatorReport indicator_report(std::span<const ObjectivePoint> approx,
                                 std::span<const ObjectivePoint> reference);

/// Non-dominated subset (exact dominance), sorted ascending by f1.
std::vector<ObjectivePoint> non_dominated_filter(std::span<const ObjectivePoint> points);

}  // namespace hrs
