#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

namespace hrs {

/// A point in the bi-objective space. Both objectives are minimized:
/// f1 is the total cost of a route plan, f2 its route-length imbalance.
struct ObjectivePoint {
  double f1 = 0.0;
  double f2 = 0.0;

  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

/// True iff both coordinates are finite and non-negative.
bool is_valid_point(const ObjectivePoint& p);

/// Pareto dominance with absolute tolerance `tol`: a dominates b iff a is at
/// least as good in both objectives (within tol) and strictly better (by more
/// than tol) in at least one. With tol == 0 this is exact dominance; identical
/// points never dominate each other.
bool dominates(const ObjectivePoint& a, const ObjectivePoint& b, double tol = 0.0);

/// Coordinate-wise equality within `tol` (exact equality when tol == 0).
bool nearly_equal(const ObjectivePoint& a, const ObjectivePoint& b, double tol = 0.0);

/// Axis-aligned box in objective space delimiting an unexplored region.
/// `upper_left` has the smaller f1 and larger f2, `lower_right` the larger f1
/// and smaller f2.
struct Rectangle {
  ObjectivePoint upper_left;
  ObjectivePoint lower_right;

  double width() const { return lower_right.f1 - upper_left.f1; }
  double height() const { return upper_left.f2 - lower_right.f2; }
  bool valid() const { return width() >= 0.0 && height() >= 0.0; }

  /// True iff `other` lies entirely inside this rectangle.
  bool contains(const Rectangle& other) const;

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

/// Width times height, in raw objective units.
double rect_area(const Rectangle& r);

/// Opaque, shareable snapshot of a solver's search state. Entries of the
/// archive hold one so that later sub-problems can warm-start nearby.
using StateHandle = std::shared_ptr<const void>;

struct ArchiveEntry {
  ObjectivePoint point;
  std::size_t solution_id = 0;
  StateHandle state;
};

struct InsertOutcome {
  bool accepted = false;
  std::vector<ArchiveEntry> evicted;
};

/// Archive of mutually non-dominated points, kept sorted ascending by f1.
///
/// Insertion rejects any point dominated by (or equal to, within the
/// tolerance) an existing entry; an accepted point evicts every entry it
/// dominates. The first-found of two equal points wins, so solution ids
/// stay stable once archived.
class ParetoArchive {
 public:
  explicit ParetoArchive(double tolerance = 1e-6) : tol_(tolerance) {}

  InsertOutcome insert(const ObjectivePoint& p, std::size_t solution_id,
                       StateHandle state = nullptr);

  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double tolerance() const { return tol_; }

  /// Smallest f2 over all entries; +inf when empty.
  double min_f2() const;

  std::vector<ObjectivePoint> points() const;

 private:
  double tol_;
  std::vector<ArchiveEntry> entries_;
};

/// Set of rectangles still worth exploring. Degenerate rectangles (zero
/// width or height) are dropped on insertion.
class RectangleSet {
 public:
  /// Adds `r` unless it is invalid or has zero area. Returns true if kept.
  bool add(const Rectangle& r);

  /// Index of the rectangle with maximal area; ties broken by smaller
  /// upper_left.f1, then smaller upper_left.f2. Empty set -> nullopt, which
  /// signals that the objective space is fully resolved.
  /// The optional scale factors weight width and height for the selection
  /// key only (used by normalized-area selection); areas reported elsewhere
  /// stay in raw units.
  std::optional<std::size_t> select_largest(double f1_scale = 1.0,
                                            double f2_scale = 1.0) const;

  void erase(std::size_t index);

  const std::vector<Rectangle>& rects() const { return rects_; }
  std::size_t size() const { return rects_.size(); }
  bool empty() const { return rects_.empty(); }

  double total_area() const;

 private:
  std::vector<Rectangle> rects_;
};

/// Removes every rectangle whose upper-left vertex is dominated by `x`.
/// Returns the removed rectangles.
std::vector<Rectangle> prune_dominated_rects(RectangleSet& set, const ObjectivePoint& x,
                                             double tol = 0.0);

}  // namespace hrs
