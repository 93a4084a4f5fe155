#include "hrs/objective_space.hpp"

#include <algorithm>
#include <cmath>

namespace hrs {

bool is_valid_point(const ObjectivePoint& p) {
  return std::isfinite(p.f1) && std::isfinite(p.f2) && p.f1 >= 0.0 && p.f2 >= 0.0;
}

bool dominates(const ObjectivePoint& a, const ObjectivePoint& b, double tol) {
  return a.f1 <= b.f1 + tol && a.f2 <= b.f2 + tol &&
         (a.f1 < b.f1 - tol || a.f2 < b.f2 - tol);
}

bool nearly_equal(const ObjectivePoint& a, const ObjectivePoint& b, double tol) {
  return std::abs(a.f1 - b.f1) <= tol && std::abs(a.f2 - b.f2) <= tol;
}

bool Rectangle::contains(const Rectangle& other) const {
  return other.upper_left.f1 >= upper_left.f1 && other.lower_right.f1 <= lower_right.f1 &&
         other.upper_left.f2 <= upper_left.f2 && other.lower_right.f2 >= lower_right.f2;
}

double rect_area(const Rectangle& r) { return r.width() * r.height(); }

InsertOutcome ParetoArchive::insert(const ObjectivePoint& p, std::size_t solution_id,
                                    StateHandle state) {
  InsertOutcome outcome;
  for (const ArchiveEntry& e : entries_) {
    if (dominates(e.point, p, tol_) || nearly_equal(e.point, p, tol_)) {
      return outcome;  // rejected, archive unchanged
    }
  }
  outcome.accepted = true;
  auto mid = std::stable_partition(entries_.begin(), entries_.end(),
                                   [&](const ArchiveEntry& e) {
                                     return !dominates(p, e.point, tol_);
                                   });
  outcome.evicted.assign(mid, entries_.end());
  entries_.erase(mid, entries_.end());

  ArchiveEntry entry{p, solution_id, std::move(state)};
  auto pos = std::lower_bound(entries_.begin(), entries_.end(), entry,
                              [](const ArchiveEntry& a, const ArchiveEntry& b) {
                                return a.point.f1 < b.point.f1 ||
                                       (a.point.f1 == b.point.f1 && a.point.f2 < b.point.f2);
                              });
  entries_.insert(pos, std::move(entry));
  return outcome;
}

double ParetoArchive::min_f2() const {
  double best = std::numeric_limits<double>::infinity();
  for (const ArchiveEntry& e : entries_) best = std::min(best, e.point.f2);
  return best;
}

std::vector<ObjectivePoint> ParetoArchive::points() const {
  std::vector<ObjectivePoint> out;
  out.reserve(entries_.size());
  for (const ArchiveEntry& e : entries_) out.push_back(e.point);
  return out;
}

bool RectangleSet::add(const Rectangle& r) {
  if (!r.valid() || r.width() <= 0.0 || r.height() <= 0.0) return false;
  rects_.push_back(r);
  return true;
}

std::optional<std::size_t> RectangleSet::select_largest(double f1_scale,
                                                        double f2_scale) const {
  if (rects_.empty()) return std::nullopt;
  std::size_t best = 0;
  double best_area = rects_[0].width() * f1_scale * rects_[0].height() * f2_scale;
  for (std::size_t i = 1; i < rects_.size(); ++i) {
    const double area = rects_[i].width() * f1_scale * rects_[i].height() * f2_scale;
    const Rectangle& r = rects_[i];
    const Rectangle& b = rects_[best];
    const bool wins =
        area > best_area ||
        (area == best_area &&
         (r.upper_left.f1 < b.upper_left.f1 ||
          (r.upper_left.f1 == b.upper_left.f1 && r.upper_left.f2 < b.upper_left.f2)));
    if (wins) {
      best = i;
      best_area = area;
    }
  }
  return best;
}

void RectangleSet::erase(std::size_t index) { rects_.erase(rects_.begin() + index); }

double RectangleSet::total_area() const {
  double sum = 0.0;
  for (const Rectangle& r : rects_) sum += rect_area(r);
  return sum;
}

std::vector<Rectangle> prune_dominated_rects(RectangleSet& set, const ObjectivePoint& x,
                                             double tol) {
  std::vector<Rectangle> removed;
  for (std::size_t i = set.size(); i-- > 0;) {
    if (dominates(x, set.rects()[i].upper_left, tol)) {
      removed.push_back(set.rects()[i]);
      set.erase(i);
    }
  }
  std::reverse(removed.begin(), removed.end());
  return removed;
}

}  // namespace hrs
