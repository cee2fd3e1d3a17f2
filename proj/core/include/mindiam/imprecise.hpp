#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mindiam/geometry.hpp"
#include "mindiam/lp.hpp"
#include "mindiam/mindcs.hpp"

namespace mindiam {

/// Bounded convex regions, one per true point: planar polygons for d = 2,
/// inequality systems for d >= 3.
class ImpreciseInstance {
 public:
  explicit ImpreciseInstance(std::vector<ConvexPolygon> regions);
  explicit ImpreciseInstance(int dim, std::vector<HalfspaceRegion> regions);

  int dim() const { return dim_; }
  int size() const;
  bool planar() const { return dim_ == 2; }

  const std::vector<ConvexPolygon>& polygons() const;
  const std::vector<HalfspaceRegion>& halfspace_regions() const { return systems_; }

  /// Membership rows of region i (edge half-planes for polygons).
  std::vector<Halfspace> region_rows(int i) const;

 private:
  int dim_ = 2;
  std::vector<ConvexPolygon> polygons_;
  std::vector<HalfspaceRegion> systems_;
};

/// Two lines certifying that regions `pair` sit in opposite wedges of
/// opening angle `alpha` around `apex`. Region pair.first lies on the
/// nonnegative side of both lines.
struct SeparabilityCert {
  std::pair<int, int> pair{0, 1};
  OrientedLine line1;
  OrientedLine line2;
  double alpha = 0.0;  // radians, in (0, pi]
  Point apex;
};

/// Square region guaranteed to contain every selection of diameter at most
/// the bound the certificate was built with.
struct FocusRect {
  Point center;
  Vec2 axis1;
  Vec2 axis2;
  double half_extent1 = 0.0;
  double half_extent2 = 0.0;

  bool contains_point(const Point& p, double tol = kGeomTol) const;
};

struct PipelineReport {
  double r_bound = 0.0;
  SeparabilityCert cert;
  double cell_size = 0.0;
  int colored_point_count = 0;
  ApproxResult mindcs_result;
  Selection final_selection;
  double final_value = 0.0;
  std::vector<std::string> warnings;
};

struct SamplingResult {
  double value = 0.0;
  Selection selection;
  double effective_resolution = 0.0;
};

struct ImpreciseOptions {
  MindcsOptions mindcs;
  /// sampling_oracle refuses selection products beyond this cap.
  double oracle_cap = 1e7;
  /// Hard cap on focus-grid nodes per axis (memory guard).
  int max_nodes_per_axis = 2048;
  /// decompose recursion depth before falling back to the sampling oracle.
  int max_decompose_depth = 2;
};

/// Separation certificate for two disjoint regions (built from the inner
/// common tangents); nullopt when the regions intersect or touch.
std::optional<SeparabilityCert> max_separability(const ConvexPolygon& a, const ConvexPolygon& b);

/// Best certificate over all region pairs (maximum alpha, ties toward the
/// lowest pair index); nullopt when every pair intersects.
std::optional<SeparabilityCert> max_separability_set(const ImpreciseInstance& instance);

/// Square centered at the certificate apex, aligned with the wedge bisector,
/// with half-extent 2 * r_bound / sin(alpha / 2).
FocusRect focus_rectangle(const SeparabilityCert& cert, double r_bound);

/// Converts regions into colored candidate points: grid nodes of spacing
/// `cell` inside the rectangle and region, plus one interior point for every
/// region-overlapped cell that received no node. Regions entirely outside
/// the rectangle raise RegionOutsideFocus.
IndecisiveInstance discretize(const ImpreciseInstance& instance, const FocusRect& rect,
                              double cell, const ImpreciseOptions& options = {});

/// Full pipeline for instances with at least one disjoint region pair:
/// bound, certificate, focus rectangle, discretization, grid solver.
PipelineReport min_diam_eps(const ImpreciseInstance& instance, double eps,
                            const ImpreciseOptions& options = {});

/// A point in the intersection of all regions, or nullopt.
std::optional<Point> common_point(const ImpreciseInstance& instance);

/// Splits an all-pairs-intersecting instance without a common point into
/// sub-instances that jointly cover the optimum: the merged-overlap instance
/// and one instance per difference-piece pair of the witnessing triple.
std::vector<ImpreciseInstance> decompose(const ImpreciseInstance& instance);

/// Brute-force baseline over per-region samples (vertices, interior grid
/// nodes and boundary points at the given spacing). The spacing is doubled
/// until the selection product fits the cap; the spacing actually used is
/// reported back.
SamplingResult sampling_oracle(const ImpreciseInstance& instance, double resolution,
                               const ImpreciseOptions& options = {});

enum class SolvePath { SingleRegion, CommonPoint, Pipeline, Decomposed, OracleFallback };

struct SolveOutcome {
  double value = 0.0;
  Selection selection;
  SolvePath path = SolvePath::Pipeline;
  std::optional<PipelineReport> report;
  std::vector<std::string> warnings;
};

/// End-to-end driver: common point, pipeline, decomposition recursion, and
/// the sampling fallback once the recursion budget is exhausted.
SolveOutcome solve_imprecise(const ImpreciseInstance& instance, double eps,
                             const ImpreciseOptions& options = {});

namespace detail {
struct DecomposePart {
  ImpreciseInstance instance;
  std::vector<int> origin;             // per sub-region: original region index
  std::pair<int, int> merged{-1, -1};  // set when two regions were merged
};
std::vector<DecomposePart> decompose_detailed(const ImpreciseInstance& instance);
std::vector<ConvexPolygon> safe_subtract(const ConvexPolygon& a, const ConvexPolygon& b);
}  // namespace detail

}  // namespace mindiam
