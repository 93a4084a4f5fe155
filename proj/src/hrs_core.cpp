#include "hrs/hrs_core.hpp"

#include <algorithm>
#include <cmath>

namespace hrs {

UpdateOutcome update_after_solve(ParetoArchive& archive, RectangleSet& rects,
                                 std::size_t split_index,
                                 const std::optional<ObjectivePoint>& x, double c,
                                 std::size_t solution_id, StateHandle state) {
  UpdateOutcome out;
  const bool accepted =
      x.has_value() && archive.insert(*x, solution_id, std::move(state)).accepted;
  out.accepted = accepted;

  if (!accepted) {
    // Infeasible or dominated: discard the explored lower half. When the
    // midpoint has collapsed onto the lower edge the strip is numerically
    // unsplittable and is dropped entirely.
    const Rectangle split = rects.rects()[split_index];
    out.removed.push_back(split);
    rects.erase(split_index);
    if (c > split.lower_right.f2) {
      const Rectangle shrunk{split.upper_left, {split.lower_right.f1, c}};
      if (rects.add(shrunk)) out.added.push_back(shrunk);
    }
    return out;
  }

  // R': rectangle straddling x in f1. R'': rectangle straddling x in f2.
  // Both are searched in the pre-update set; they may be the same rectangle.
  std::optional<std::size_t> straddle_f1;
  std::optional<std::size_t> straddle_f2;
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rectangle& r = rects.rects()[i];
    if (!straddle_f1 && r.upper_left.f1 < x->f1 && x->f1 <= r.lower_right.f1)
      straddle_f1 = i;
    if (!straddle_f2 && r.upper_left.f2 >= x->f2 && x->f2 >= r.lower_right.f2)
      straddle_f2 = i;
  }

  std::vector<Rectangle> children;
  if (straddle_f1) {
    const Rectangle& r = rects.rects()[*straddle_f1];
    children.push_back({r.upper_left, {x->f1, std::max(r.lower_right.f2, c)}});
  }
  if (straddle_f2) {
    const Rectangle& r = rects.rects()[*straddle_f2];
    children.push_back({{std::max(x->f1, r.upper_left.f1), x->f2}, r.lower_right});
  }

  std::vector<std::size_t> doomed;
  if (straddle_f1) doomed.push_back(*straddle_f1);
  if (straddle_f2 && straddle_f2 != straddle_f1) doomed.push_back(*straddle_f2);
  std::sort(doomed.begin(), doomed.end(), std::greater<>());
  for (std::size_t i : doomed) {
    out.removed.push_back(rects.rects()[i]);
    rects.erase(i);
  }
  for (const Rectangle& child : children) {
    if (rects.add(child)) out.added.push_back(child);
  }

  std::vector<Rectangle> pruned = prune_dominated_rects(rects, *x, archive.tolerance());
  out.removed.insert(out.removed.end(), pruned.begin(), pruned.end());
  return out;
}

StateHandle nearest_state(const ParetoArchive& archive, double c) {
  const auto& entries = archive.entries();
  if (entries.empty()) return nullptr;
  std::size_t best = 0;
  double best_gap = std::abs(entries[0].point.f2 - c);
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const double gap = std::abs(entries[i].point.f2 - c);
    if (gap < best_gap || (gap == best_gap && entries[i].point.f1 < entries[best].point.f1)) {
      best = i;
      best_gap = gap;
    }
  }
  return entries[best].state;
}

}  // namespace hrs
