#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mindiam/geometry.hpp"

namespace mindiam {

/// A candidate location together with its color (class id) and its position
/// in the flattened instance point list.
struct ColoredPoint {
  Point point;
  int color = 0;
  int global_index = 0;
};

/// Finite candidate sets, one nonempty class per color. The true point of
/// color i is one of classes[i].
class IndecisiveInstance {
 public:
  explicit IndecisiveInstance(std::vector<std::vector<Point>> classes);

  int dim() const { return dim_; }
  int num_colors() const { return static_cast<int>(classes_.size()); }
  int num_points() const { return num_points_; }
  const std::vector<std::vector<Point>>& classes() const { return classes_; }

  /// Points flattened class by class; global_index matches list position.
  std::vector<ColoredPoint> flattened() const;

 private:
  std::vector<std::vector<Point>> classes_;
  int dim_ = 0;
  int num_points_ = 0;
};

/// Uniform axis-parallel grid; a point's cell index is
/// floor((p - origin) / cell_size) per axis, clamped into the extent.
struct Grid {
  Point origin;
  double cell_size = 1.0;
  std::vector<int> extent;

  std::vector<int> cell_of(const Point& p) const;
  int flat_index(const std::vector<int>& cell) const;
  int cell_count() const;
};

/// Set of grid cells assigned value 1, stored as sorted flat indices.
struct CellMask {
  std::vector<int> chosen;
};

/// One chosen point per color (or per region in the imprecise reduction).
struct Selection {
  std::vector<Point> points;

  DiameterResult diameter(Metric metric = Metric::L2) const;
};

struct ApproxResult {
  /// Certified diameter of `selection` (the minimized quantity).
  double value = 0.0;
  /// Diameter of the winning mask's cell representatives.
  double representative_value = 0.0;
  Selection selection;
  /// Color index pair realizing `value` inside the selection.
  std::pair<int, int> witness{0, 0};
  double epsilon = 0.0;
  /// The lens pair the winner was found under.
  std::pair<Point, Point> winning_pair;
  CellMask mask;
};

struct MindcsOptions {
  /// Enumeration aborts when a lens grid has more nonempty cells than this.
  int max_nonempty_cells = 24;
  /// brute_force refuses products of class sizes beyond this cap.
  std::uint64_t oracle_cap = 1000000;
};

/// True iff x lies in the intersection of the two balls of radius |pq|
/// centered at p and q.
bool in_lens(const Point& p, const Point& q, const Point& x);

/// True iff every color in [0, num_colors) appears among the points.
bool is_c_legal(const std::vector<ColoredPoint>& points, int num_colors);

/// Exact minimum over the full selection product. Ties break toward the
/// lexicographically smallest selection index vector.
std::pair<double, Selection> brute_force(const IndecisiveInstance& instance,
                                         const MindcsOptions& options = {});

struct DiameterApxOutcome {
  double selection_diameter = 0.0;
  double representative_value = 0.0;
  CellMask mask;
  Selection selection;
  std::pair<int, int> selection_witness{0, 0};
};

/// Grid enumeration for one lens: builds a grid of cell size eps*|pq| over
/// the lens points' bounding box, enumerates color-covering cell sets of at
/// most num_colors cells, and returns the one whose extracted selection has
/// the smallest diameter. nullopt when no cell set covers all colors.
std::optional<DiameterApxOutcome> diameter_apx(const std::vector<ColoredPoint>& lens_points,
                                               int num_colors, const Point& p, const Point& q,
                                               double eps, const MindcsOptions& options = {});

/// Full solver: scans all point pairs, keeps C-legal lenses, and returns the
/// best certified selection over all lens grids. The selection's true
/// diameter lies within (1 + 2*sqrt(d)*eps) of the optimum.
ApproxResult min_diameter_apx(const IndecisiveInstance& instance, double eps,
                              const MindcsOptions& options = {});

namespace detail {
/// Minimum representative diameter over every legal mask vs. over masks of
/// at most num_colors cells; used to validate the enumeration pruning.
std::pair<double, double> rep_minimum_full_vs_pruned(const std::vector<ColoredPoint>& lens_points,
                                                     int num_colors, const Point& p,
                                                     const Point& q, double eps);
}  // namespace detail

}  // namespace mindiam
