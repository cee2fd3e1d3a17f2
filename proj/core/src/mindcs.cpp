#include "mindiam/mindcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace mindiam {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::PreconditionViolation, what);
}

}  // namespace

IndecisiveInstance::IndecisiveInstance(std::vector<std::vector<Point>> classes)
    : classes_(std::move(classes)) {
  require(!classes_.empty(), "instance needs at least one color class");
  for (const auto& cls : classes_) {
    if (cls.empty()) fail(ErrorCode::EmptyColorClass, "every color class must be nonempty");
    for (const Point& p : cls) {
      if (dim_ == 0) dim_ = p.dim();
      require(p.dim() == dim_, "all points must share one dimension");
      ++num_points_;
    }
  }
}

std::vector<ColoredPoint> IndecisiveInstance::flattened() const {
  std::vector<ColoredPoint> out;
  out.reserve(static_cast<std::size_t>(num_points_));
  int idx = 0;
  for (int c = 0; c < num_colors(); ++c)
    for (const Point& p : classes_[static_cast<std::size_t>(c)])
      out.push_back({p, c, idx++});
  return out;
}

std::vector<int> Grid::cell_of(const Point& p) const {
  std::vector<int> cell(static_cast<std::size_t>(p.dim()));
  for (int k = 0; k < p.dim(); ++k) {
    int idx = static_cast<int>(std::floor((p[k] - origin[k]) / cell_size));
    idx = std::clamp(idx, 0, extent[static_cast<std::size_t>(k)] - 1);
    cell[static_cast<std::size_t>(k)] = idx;
  }
  return cell;
}

int Grid::flat_index(const std::vector<int>& cell) const {
  int flat = 0;
  for (std::size_t k = 0; k < cell.size(); ++k) flat = flat * extent[k] + cell[k];
  return flat;
}

int Grid::cell_count() const {
  int n = 1;
  for (int e : extent) n *= e;
  return n;
}

DiameterResult Selection::diameter(Metric metric) const {
  return mindiam::diameter(points, metric);
}

bool in_lens(const Point& p, const Point& q, const Point& x) {
  const double radius = dist(p, q, Metric::L2) + kGeomTol;
  return dist(x, p, Metric::L2) <= radius && dist(x, q, Metric::L2) <= radius;
}

bool is_c_legal(const std::vector<ColoredPoint>& points, int num_colors) {
  if (num_colors <= 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(num_colors), 0);
  int found = 0;
  for (const ColoredPoint& cp : points) {
    if (cp.color < 0 || cp.color >= num_colors) continue;
    if (!seen[static_cast<std::size_t>(cp.color)]) {
      seen[static_cast<std::size_t>(cp.color)] = 1;
      if (++found == num_colors) return true;
    }
  }
  return found == num_colors;
}

std::pair<double, Selection> brute_force(const IndecisiveInstance& instance,
                                         const MindcsOptions& options) {
  std::uint64_t product = 1;
  for (const auto& cls : instance.classes()) {
    product *= cls.size();
    if (product > options.oracle_cap)
      fail(ErrorCode::OracleTooLarge, "selection product exceeds the oracle cap");
  }

  const int m = instance.num_colors();
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  std::vector<int> best_pick;
  double best = std::numeric_limits<double>::infinity();

  // odometer over the selection product, lexicographic order
  for (;;) {
    double diam = 0.0;
    for (int i = 0; i < m && diam < std::numeric_limits<double>::infinity(); ++i) {
      const Point& a = instance.classes()[static_cast<std::size_t>(i)]
                                         [static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
      for (int j = i + 1; j < m; ++j) {
        const Point& b = instance.classes()[static_cast<std::size_t>(j)]
                                           [static_cast<std::size_t>(pick[static_cast<std::size_t>(j)])];
        diam = std::max(diam, dist(a, b, Metric::L2));
      }
    }
    if (diam < best) {
      best = diam;
      best_pick = pick;
    }
    int k = m - 1;
    while (k >= 0) {
      if (++pick[static_cast<std::size_t>(k)] <
          static_cast<int>(instance.classes()[static_cast<std::size_t>(k)].size()))
        break;
      pick[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }

  Selection sel;
  for (int i = 0; i < m; ++i)
    sel.points.push_back(instance.classes()[static_cast<std::size_t>(i)]
                                           [static_cast<std::size_t>(best_pick[static_cast<std::size_t>(i)])]);
  return {best, sel};
}

namespace {

struct LensGrid {
  Grid grid;
  // nonempty cells, ordered by flat index
  std::vector<int> cell_ids;
  // per nonempty cell: covered colors, representative, per-color best point
  std::vector<std::uint64_t> cell_colors;
  std::vector<int> cell_rep_pos;                 // lens position of lowest-global-index point
  std::vector<std::vector<int>> cell_color_pick; // [cell][color] -> index into lens_points or -1
};

LensGrid build_lens_grid(const std::vector<ColoredPoint>& pts, int num_colors, double cell_size) {
  std::vector<Point> locs;
  locs.reserve(pts.size());
  for (const ColoredPoint& cp : pts) locs.push_back(cp.point);
  const BoundingBox box = bounding_box(locs);
  const int d = box.min_corner.dim();

  Grid grid;
  grid.origin = box.min_corner;
  grid.cell_size = cell_size;
  grid.extent.resize(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double span = box.max_corner[k] - box.min_corner[k];
    grid.extent[static_cast<std::size_t>(k)] =
        std::max(1, static_cast<int>(std::floor(span / cell_size)) + 1);
  }

  std::map<int, int> flat_to_slot;
  LensGrid out;
  out.grid = grid;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int flat = grid.flat_index(grid.cell_of(pts[i].point));
    auto it = flat_to_slot.find(flat);
    if (it == flat_to_slot.end()) {
      it = flat_to_slot.emplace(flat, static_cast<int>(out.cell_ids.size())).first;
      out.cell_ids.push_back(flat);
      out.cell_colors.push_back(0);
      out.cell_rep_pos.push_back(static_cast<int>(i));
      out.cell_color_pick.emplace_back(static_cast<std::size_t>(num_colors), -1);
    }
    const int slot = it->second;
    out.cell_colors[static_cast<std::size_t>(slot)] |= (std::uint64_t{1} << pts[i].color);
    int& rep = out.cell_rep_pos[static_cast<std::size_t>(slot)];
    if (pts[i].global_index < pts[static_cast<std::size_t>(rep)].global_index)
      rep = static_cast<int>(i);
    int& pick = out.cell_color_pick[static_cast<std::size_t>(slot)][static_cast<std::size_t>(pts[i].color)];
    if (pick < 0 || pts[i].global_index < pts[static_cast<std::size_t>(pick)].global_index)
      pick = static_cast<int>(i);
  }
  // reorder slots by flat cell index so enumeration order is deterministic
  std::vector<int> order(out.cell_ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int l, int r) { return out.cell_ids[static_cast<std::size_t>(l)] < out.cell_ids[static_cast<std::size_t>(r)]; });
  LensGrid sorted;
  sorted.grid = out.grid;
  for (int slot : order) {
    sorted.cell_ids.push_back(out.cell_ids[static_cast<std::size_t>(slot)]);
    sorted.cell_colors.push_back(out.cell_colors[static_cast<std::size_t>(slot)]);
    sorted.cell_rep_pos.push_back(out.cell_rep_pos[static_cast<std::size_t>(slot)]);
    sorted.cell_color_pick.push_back(out.cell_color_pick[static_cast<std::size_t>(slot)]);
  }
  return sorted;
}

// Visits all size-1..max_size subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int max_size, Fn&& fn) {
  std::vector<int> comb;
  for (int size = 1; size <= std::min(n, max_size); ++size) {
    comb.assign(static_cast<std::size_t>(size), 0);
    for (int i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = i;
    for (;;) {
      fn(comb);
      int k = size - 1;
      while (k >= 0 && comb[static_cast<std::size_t>(k)] == n - size + k) --k;
      if (k < 0) break;
      ++comb[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < size; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

double pairwise_diameter(const std::vector<const Point*>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      best = std::max(best, dist(*pts[i], *pts[j], Metric::L2));
  return best;
}

}  // namespace

std::optional<DiameterApxOutcome> diameter_apx(const std::vector<ColoredPoint>& lens_points,
                                               int num_colors, const Point& p, const Point& q,
                                               double eps, const MindcsOptions& options) {
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
  require(num_colors >= 1 && num_colors <= 63, "color count must lie in [1, 63]");
  const double delta = dist(p, q, Metric::L2);
  require(delta > 0.0, "lens pair must have positive distance");
  if (lens_points.empty()) return std::nullopt;

  const LensGrid lg = build_lens_grid(lens_points, num_colors, eps * delta);
  const int ncells = static_cast<int>(lg.cell_ids.size());
  if (ncells > options.max_nonempty_cells)
    fail(ErrorCode::GridTooFine,
         "lens grid has " + std::to_string(ncells) + " nonempty cells; increase eps");

  const std::uint64_t full = (std::uint64_t{1} << num_colors) - 1;

  std::optional<DiameterApxOutcome> best;
  auto flat_point = [&lens_points](int i) -> const Point& {
    return lens_points[static_cast<std::size_t>(i)].point;
  };

  for_each_subset(ncells, num_colors, [&](const std::vector<int>& subset) {
    std::uint64_t covered = 0;
    for (int slot : subset) covered |= lg.cell_colors[static_cast<std::size_t>(slot)];
    if ((covered & full) != full) return;

    // selection: per color the lowest-global-index point within chosen cells
    std::vector<int> chosen_pt(static_cast<std::size_t>(num_colors), -1);
    for (int slot : subset) {
      const auto& picks = lg.cell_color_pick[static_cast<std::size_t>(slot)];
      for (int c = 0; c < num_colors; ++c) {
        const int cand = picks[static_cast<std::size_t>(c)];
        if (cand < 0) continue;
        int& cur = chosen_pt[static_cast<std::size_t>(c)];
        if (cur < 0 || lens_points[static_cast<std::size_t>(cand)].global_index <
                           lens_points[static_cast<std::size_t>(cur)].global_index)
          cur = cand;
      }
    }
    Selection sel;
    sel.points.reserve(static_cast<std::size_t>(num_colors));
    for (int c = 0; c < num_colors; ++c)
      sel.points.push_back(flat_point(chosen_pt[static_cast<std::size_t>(c)]));
    const DiameterResult sd = sel.diameter();

    if (!best.has_value() || sd.value < best->selection_diameter) {
      std::vector<const Point*> reps;
      for (int slot : subset)
        reps.push_back(&lens_points[static_cast<std::size_t>(
                                        lg.cell_rep_pos[static_cast<std::size_t>(slot)])]
                            .point);
      DiameterApxOutcome out;
      out.selection_diameter = sd.value;
      out.representative_value = pairwise_diameter(reps);
      for (int slot : subset) out.mask.chosen.push_back(lg.cell_ids[static_cast<std::size_t>(slot)]);
      out.selection = std::move(sel);
      out.selection_witness = sd.witness;
      best = std::move(out);
    }
  });

  return best;
}

namespace detail {

std::pair<double, double> rep_minimum_full_vs_pruned(const std::vector<ColoredPoint>& lens_points,
                                                     int num_colors, const Point& p,
                                                     const Point& q, double eps) {
  const double delta = dist(p, q, Metric::L2);
  const LensGrid lg = build_lens_grid(lens_points, num_colors, eps * delta);
  const int ncells = static_cast<int>(lg.cell_ids.size());
  require(ncells <= 20, "full enumeration helper limited to 2^20 masks");
  const std::uint64_t full = (std::uint64_t{1} << num_colors) - 1;

  auto rep_diam = [&](std::uint64_t mask_bits) {
    std::vector<const Point*> reps;
    for (int slot = 0; slot < ncells; ++slot) {
      if (!(mask_bits & (std::uint64_t{1} << slot))) continue;
      reps.push_back(&lens_points[static_cast<std::size_t>(
                                      lg.cell_rep_pos[static_cast<std::size_t>(slot)])]
                          .point);
    }
    return pairwise_diameter(reps);
  };

  double best_full = std::numeric_limits<double>::infinity();
  double best_pruned = std::numeric_limits<double>::infinity();
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << ncells); ++bits) {
    std::uint64_t covered = 0;
    int popcount = 0;
    for (int slot = 0; slot < ncells; ++slot)
      if (bits & (std::uint64_t{1} << slot)) {
        covered |= lg.cell_colors[static_cast<std::size_t>(slot)];
        ++popcount;
      }
    if ((covered & full) != full) continue;
    const double d = rep_diam(bits);
    best_full = std::min(best_full, d);
    if (popcount <= num_colors) best_pruned = std::min(best_pruned, d);
  }
  return {best_full, best_pruned};
}

}  // namespace detail

ApproxResult min_diameter_apx(const IndecisiveInstance& instance, double eps,
                              const MindcsOptions& options) {
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
  const int m = instance.num_colors();
  require(m <= 63, "color count must lie in [1, 63]");

  ApproxResult result;
  result.epsilon = eps;

  if (m == 1) {
    const Point& p = instance.classes()[0][0];
    result.selection.points = {p};
    result.winning_pair = {p, p};
    return result;
  }

  const std::vector<ColoredPoint> all = instance.flattened();

  // coincident multi-color location: a selection of diameter zero exists
  {
    std::map<std::vector<double>, std::uint64_t> at_location;
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    for (const ColoredPoint& cp : all) at_location[cp.point.coords] |= (std::uint64_t{1} << cp.color);
    for (const auto& [coords, colors] : at_location) {
      if ((colors & full) != full) continue;
      const Point loc{std::vector<double>(coords)};
      Selection sel;
      sel.points.assign(static_cast<std::size_t>(m), loc);
      result.selection = std::move(sel);
      result.winning_pair = {loc, loc};
      return result;
    }
  }

  std::optional<DiameterApxOutcome> best;
  std::pair<Point, Point> best_pair;

  const int n = static_cast<int>(all.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point& p = all[static_cast<std::size_t>(i)].point;
      const Point& q = all[static_cast<std::size_t>(j)].point;
      if (p == q) continue;
      std::vector<ColoredPoint> lens;
      for (const ColoredPoint& cp : all)
        if (in_lens(p, q, cp.point)) lens.push_back(cp);
      if (!is_c_legal(lens, m)) continue;
      auto outcome = diameter_apx(lens, m, p, q, eps, options);
      if (!outcome.has_value()) continue;
      if (!best.has_value() || outcome->selection_diameter < best->selection_diameter) {
        best = std::move(outcome);
        best_pair = {p, q};
      }
    }
  }

  require(best.has_value(), "no legal lens found; instance must carry every color");
  result.value = best->selection_diameter;
  result.representative_value = best->representative_value;
  result.selection = best->selection;
  result.witness = best->selection_witness;
  result.winning_pair = best_pair;
  result.mask = best->mask;
  return result;
}

}  // namespace mindiam
