#include "mindiam/imprecise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace mindiam {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::PreconditionViolation, what);
}

}  // namespace

ImpreciseInstance::ImpreciseInstance(std::vector<ConvexPolygon> regions)
    : dim_(2), polygons_(std::move(regions)) {
  require(!polygons_.empty(), "instance needs at least one region");
}

ImpreciseInstance::ImpreciseInstance(int dim, std::vector<HalfspaceRegion> regions)
    : dim_(dim), systems_(std::move(regions)) {
  require(dim_ >= 1, "dimension must be positive");
  require(!systems_.empty(), "instance needs at least one region");
  for (const HalfspaceRegion& r : systems_) {
    require(r.dim == dim_, "region dimension mismatch");
    for (const Halfspace& hs : r.rows)
      require(static_cast<int>(hs.a.size()) == dim_, "halfspace width mismatch");
    // nonempty and bounded: extremize every coordinate
    for (int k = 0; k < dim_; ++k) {
      for (double sign : {1.0, -1.0}) {
        LinearProgram lp;
        lp.objective.assign(static_cast<std::size_t>(dim_), 0.0);
        lp.objective[static_cast<std::size_t>(k)] = sign;
        lp.lower.assign(static_cast<std::size_t>(dim_), std::nullopt);
        lp.upper.assign(static_cast<std::size_t>(dim_), std::nullopt);
        for (const Halfspace& hs : r.rows) {
          lp.rows.push_back(hs.a);
          lp.rhs.push_back(hs.b);
        }
        const LpSolution sol = simplex_solve(lp);
        if (sol.status == LpStatus::Infeasible)
          fail(ErrorCode::PreconditionViolation, "halfspace region is empty");
        if (sol.status == LpStatus::Unbounded)
          fail(ErrorCode::PreconditionViolation, "halfspace region is unbounded");
      }
    }
  }
}

int ImpreciseInstance::size() const {
  return planar() ? static_cast<int>(polygons_.size()) : static_cast<int>(systems_.size());
}

const std::vector<ConvexPolygon>& ImpreciseInstance::polygons() const {
  require(planar(), "polygon access requires a planar instance");
  return polygons_;
}

std::vector<Halfspace> ImpreciseInstance::region_rows(int i) const {
  if (planar()) return region_constraints(polygons_[static_cast<std::size_t>(i)]);
  return systems_[static_cast<std::size_t>(i)].rows;
}

namespace {

Vec2 left_normal(const OrientedLine& line) { return perp(line.direction); }

std::optional<Vec2> line_intersection(const OrientedLine& l1, const OrientedLine& l2) {
  const Vec2 n1 = left_normal(l1);
  const Vec2 n2 = left_normal(l2);
  const double det = cross(n1, n2);
  if (std::abs(det) < 1e-12) return std::nullopt;
  const double c1 = dot(n1, to_vec2(l1.point));
  const double c2 = dot(n2, to_vec2(l2.point));
  return Vec2{(c1 * n2.y - c2 * n1.y) / det, (n1.x * c2 - n2.x * c1) / det};
}

}  // namespace

std::optional<SeparabilityCert> max_separability(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto tangents = inner_tangents(a, b);
  if (!tangents.has_value()) return std::nullopt;

  SeparabilityCert cert;
  cert.line1 = tangents->first;
  cert.line2 = tangents->second;
  const Vec2 n1 = left_normal(cert.line1);
  const Vec2 n2 = left_normal(cert.line2);
  const double theta = std::acos(std::clamp(dot(n1, n2), -1.0, 1.0));
  cert.alpha = std::min(std::acos(-1.0), std::acos(-1.0) - theta);
  if (cert.alpha <= 0.0) cert.alpha = std::numeric_limits<double>::min();
  if (const auto apex = line_intersection(cert.line1, cert.line2); apex.has_value()) {
    cert.apex = to_point(*apex);
  } else {
    cert.apex = cert.line1.point;  // coincident tangents anchor at the mid-gap
    cert.alpha = std::acos(-1.0);
  }
  return cert;
}

std::optional<SeparabilityCert> max_separability_set(const ImpreciseInstance& instance) {
  require(instance.planar(), "separability requires a planar instance");
  require(instance.size() >= 2, "separability needs at least two regions");
  std::optional<SeparabilityCert> best;
  const auto& polys = instance.polygons();
  for (int i = 0; i < instance.size(); ++i) {
    for (int j = i + 1; j < instance.size(); ++j) {
      auto cert = max_separability(polys[static_cast<std::size_t>(i)], polys[static_cast<std::size_t>(j)]);
      if (!cert.has_value()) continue;
      cert->pair = {i, j};
      if (!best.has_value() || cert->alpha > best->alpha) best = std::move(cert);
    }
  }
  return best;
}

bool FocusRect::contains_point(const Point& p, double tol) const {
  const Vec2 rel = to_vec2(p) - to_vec2(center);
  return std::abs(dot(rel, axis1)) <= half_extent1 + tol &&
         std::abs(dot(rel, axis2)) <= half_extent2 + tol;
}

FocusRect focus_rectangle(const SeparabilityCert& cert, double r_bound) {
  require(r_bound > 0.0, "bound must be positive");
  if (cert.alpha <= 0.0) fail(ErrorCode::PreconditionViolation, "certificate angle must be positive");
  const Vec2 n1 = left_normal(cert.line1);
  const Vec2 n2 = left_normal(cert.line2);
  Vec2 bisector = n1 + n2;
  if (norm(bisector) < 1e-12) bisector = n1;
  FocusRect rect;
  rect.center = cert.apex;
  rect.axis1 = normalized(bisector);
  rect.axis2 = perp(rect.axis1);
  const double h = 2.0 * r_bound / std::sin(cert.alpha / 2.0);
  rect.half_extent1 = h;
  rect.half_extent2 = h;
  return rect;
}

IndecisiveInstance discretize(const ImpreciseInstance& instance, const FocusRect& rect,
                              double cell, const ImpreciseOptions& options) {
  require(instance.planar(), "discretization requires a planar instance");
  require(cell > 0.0, "cell size must be positive");

  const Vec2 center = to_vec2(rect.center);
  const int nodes1 = static_cast<int>(std::floor(2.0 * rect.half_extent1 / cell)) + 1;
  const int nodes2 = static_cast<int>(std::floor(2.0 * rect.half_extent2 / cell)) + 1;
  if (nodes1 > options.max_nodes_per_axis || nodes2 > options.max_nodes_per_axis)
    fail(ErrorCode::GridTooFine, "focus grid would need " + std::to_string(nodes1) + "x" +
                                     std::to_string(nodes2) + " nodes; increase eps");

  const int cells1 = std::max(1, static_cast<int>(std::ceil(2.0 * rect.half_extent1 / cell - 1e-12)));
  const int cells2 = std::max(1, static_cast<int>(std::ceil(2.0 * rect.half_extent2 / cell - 1e-12)));

  auto to_world = [&](double lx, double ly) {
    return center + lx * rect.axis1 + ly * rect.axis2;
  };

  const int n = instance.size();
  std::vector<std::vector<Point>> classes(static_cast<std::size_t>(n));
  std::vector<std::set<std::pair<int, int>>> covered(static_cast<std::size_t>(n));

  for (int r = 0; r < n; ++r) {
    const ConvexPolygon& region = instance.polygons()[static_cast<std::size_t>(r)];
    for (int a = 0; a < nodes1; ++a) {
      const double lx = -rect.half_extent1 + a * cell;
      for (int b = 0; b < nodes2; ++b) {
        const double ly = -rect.half_extent2 + b * cell;
        const Vec2 w = to_world(lx, ly);
        if (!contains(region, w)) continue;
        classes[static_cast<std::size_t>(r)].push_back(to_point(w));
        // a lattice node is a corner of up to four cells
        for (int da = -1; da <= 0; ++da) {
          for (int db = -1; db <= 0; ++db) {
            const int ca = a + da, cb = b + db;
            if (ca >= 0 && ca < cells1 && cb >= 0 && cb < cells2)
              covered[static_cast<std::size_t>(r)].insert({ca, cb});
          }
        }
      }
    }
  }

  // completion pass: regions overlapping a cell with no node get one witness
  for (int r = 0; r < n; ++r) {
    const ConvexPolygon& region = instance.polygons()[static_cast<std::size_t>(r)];
    const BoundingBox rb = region.bbox();
    for (int ca = 0; ca < cells1; ++ca) {
      for (int cb = 0; cb < cells2; ++cb) {
        if (covered[static_cast<std::size_t>(r)].count({ca, cb})) continue;
        const double x0 = -rect.half_extent1 + ca * cell;
        const double x1 = std::min(x0 + cell, rect.half_extent1);
        const double y0 = -rect.half_extent2 + cb * cell;
        const double y1 = std::min(y0 + cell, rect.half_extent2);
        const Vec2 q0 = to_world(x0, y0);
        const Vec2 q1 = to_world(x1, y0);
        const Vec2 q2 = to_world(x1, y1);
        const Vec2 q3 = to_world(x0, y1);
        const double qminx = std::min({q0.x, q1.x, q2.x, q3.x});
        const double qmaxx = std::max({q0.x, q1.x, q2.x, q3.x});
        const double qminy = std::min({q0.y, q1.y, q2.y, q3.y});
        const double qmaxy = std::max({q0.y, q1.y, q2.y, q3.y});
        if (qmaxx < rb.min_corner.x() - kGeomTol || qminx > rb.max_corner.x() + kGeomTol ||
            qmaxy < rb.min_corner.y() - kGeomTol || qminy > rb.max_corner.y() + kGeomTol)
          continue;
        ConvexPolygon cell_poly(std::vector<Vec2>{q0, q1, q2, q3});
        const auto piece = clip_convex(region, cell_poly);
        if (!piece.has_value()) continue;
        classes[static_cast<std::size_t>(r)].push_back(to_point(piece->vertices()[0]));
      }
    }
  }

  for (int r = 0; r < n; ++r)
    if (classes[static_cast<std::size_t>(r)].empty())
      fail(ErrorCode::RegionOutsideFocus,
           "region " + std::to_string(r) + " lies entirely outside the focus rectangle");

  return IndecisiveInstance(std::move(classes));
}

PipelineReport min_diam_eps(const ImpreciseInstance& instance, double eps,
                            const ImpreciseOptions& options) {
  require(instance.planar(), "pipeline requires a planar instance");
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
  require(instance.size() >= 2, "pipeline needs at least two regions");

  PipelineReport report;
  report.r_bound = sqrt_d_approx(instance).ell;
  const auto cert = max_separability_set(instance);
  if (!cert.has_value())
    fail(ErrorCode::NotSeparable, "no disjoint region pair; decompose the instance first");
  report.cert = *cert;

  const FocusRect rect = focus_rectangle(report.cert, report.r_bound);
  report.cell_size = eps * report.r_bound;
  const IndecisiveInstance colored = discretize(instance, rect, report.cell_size, options);
  report.colored_point_count = colored.num_points();

  report.mindcs_result = min_diameter_apx(colored, eps, options.mindcs);
  report.final_selection = report.mindcs_result.selection;
  for (int r = 0; r < instance.size(); ++r)
    require(contains(instance.polygons()[static_cast<std::size_t>(r)],
                     report.final_selection.points[static_cast<std::size_t>(r)]),
            "selected point escaped its region");
  report.final_value = report.final_selection.diameter().value;
  return report;
}

std::optional<Point> common_point(const ImpreciseInstance& instance) {
  const int d = instance.dim();
  // deepest common point: maximize the slack t with rows a.x + |a| t <= b
  LinearProgram lp;
  lp.objective.assign(static_cast<std::size_t>(d + 1), 0.0);
  lp.objective[static_cast<std::size_t>(d)] = -1.0;
  lp.lower.assign(static_cast<std::size_t>(d + 1), std::nullopt);
  lp.upper.assign(static_cast<std::size_t>(d + 1), std::nullopt);
  for (int i = 0; i < instance.size(); ++i) {
    for (const Halfspace& hs : instance.region_rows(i)) {
      double len = 0.0;
      for (double v : hs.a) len += v * v;
      len = std::sqrt(len);
      std::vector<double> row = hs.a;
      row.push_back(len);
      lp.rows.push_back(std::move(row));
      lp.rhs.push_back(hs.b);
    }
  }
  const LpSolution sol = simplex_solve(lp);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  const double slack = sol.x[static_cast<std::size_t>(d)];
  if (slack < -kGeomTol) return std::nullopt;
  std::vector<double> coords(sol.x.begin(), sol.x.begin() + d);
  return Point(std::move(coords));
}

namespace detail {

std::vector<ConvexPolygon> safe_subtract(const ConvexPolygon& a, const ConvexPolygon& b) {
  try {
    return subtract_and_triangulate(a, b);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HoleTopology) throw;
  }
  // b strictly inside a: split a along a chord through b's centroid so each
  // half sees b on its boundary
  const Vec2 c = b.centroid();
  const Vec2 n{1.0, 0.0};
  std::vector<ConvexPolygon> pieces;
  for (double sign : {1.0, -1.0}) {
    auto ring = clip_ring_halfplane(a.vertices(), {sign * n.x, sign * n.y}, sign * c.x);
    auto half = sanitize_clip(std::move(ring));
    if (!half.has_value() || half->area() < kAreaTol) continue;
    for (ConvexPolygon& piece : subtract_and_triangulate(*half, b)) pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::vector<DecomposePart> decompose_detailed(const ImpreciseInstance& instance) {
  require(instance.planar(), "decomposition requires a planar instance");
  const int n = instance.size();
  require(n >= 3, "decomposition needs at least three regions");
  const auto& polys = instance.polygons();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(clip_convex(polys[static_cast<std::size_t>(i)], polys[static_cast<std::size_t>(j)]).has_value(),
              "decomposition expects every region pair to intersect");
  require(!common_point(instance).has_value(),
          "instance has a common point; the trivial selection is optimal");

  // Some triple must have an empty intersection, else a common point exists.
  int ti = -1, tj = -1, tk = -1;
  std::optional<ConvexPolygon> overlap;
  for (int i = 0; i < n && ti < 0; ++i) {
    for (int j = i + 1; j < n && ti < 0; ++j) {
      const auto ab = clip_convex(polys[static_cast<std::size_t>(i)], polys[static_cast<std::size_t>(j)]);
      if (!ab.has_value()) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!clip_convex(*ab, polys[static_cast<std::size_t>(k)]).has_value()) {
          ti = i;
          tj = j;
          tk = k;
          overlap = ab;
          break;
        }
      }
    }
  }
  require(ti >= 0, "no empty triple intersection found despite missing common point");

  std::vector<DecomposePart> parts;

  // case (i): both chosen points in the overlap -> merge the two regions
  {
    std::vector<ConvexPolygon> regions;
    std::vector<int> origin;
    for (int r = 0; r < n; ++r) {
      if (r == tj) continue;
      regions.push_back(r == ti ? *overlap : polys[static_cast<std::size_t>(r)]);
      origin.push_back(r);
    }
    parts.push_back({ImpreciseInstance(std::move(regions)), std::move(origin), {ti, tj}});
  }

  // case (ii): the points sit in opposite difference pieces
  const std::vector<ConvexPolygon> pa = safe_subtract(polys[static_cast<std::size_t>(ti)], polys[static_cast<std::size_t>(tj)]);
  const std::vector<ConvexPolygon> pb = safe_subtract(polys[static_cast<std::size_t>(tj)], polys[static_cast<std::size_t>(ti)]);
  for (const ConvexPolygon& piece_a : pa) {
    for (const ConvexPolygon& piece_b : pb) {
      std::vector<ConvexPolygon> regions;
      std::vector<int> origin;
      for (int r = 0; r < n; ++r) {
        if (r == ti)
          regions.push_back(piece_a);
        else if (r == tj)
          regions.push_back(piece_b);
        else
          regions.push_back(polys[static_cast<std::size_t>(r)]);
        origin.push_back(r);
      }
      parts.push_back({ImpreciseInstance(std::move(regions)), std::move(origin), {-1, -1}});
    }
  }
  return parts;
}

}  // namespace detail

std::vector<ImpreciseInstance> decompose(const ImpreciseInstance& instance) {
  std::vector<ImpreciseInstance> out;
  for (detail::DecomposePart& part : detail::decompose_detailed(instance))
    out.push_back(std::move(part.instance));
  return out;
}

namespace {

std::vector<Vec2> region_samples(const ConvexPolygon& region, double spacing) {
  std::vector<Vec2> samples = region.vertices();
  const BoundingBox box = region.bbox();
  for (double x = box.min_corner.x(); x <= box.max_corner.x() + 1e-12; x += spacing) {
    for (double y = box.min_corner.y(); y <= box.max_corner.y() + 1e-12; y += spacing) {
      const Vec2 p{x, y};
      if (contains(region, p)) samples.push_back(p);
    }
  }
  const auto& vs = region.vertices();
  if (vs.size() >= 2) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vec2 a = vs[i];
      const Vec2 b = vs[(i + 1) % vs.size()];
      if (vs.size() == 2 && i == 1) break;  // a segment has one edge
      const double len = norm(b - a);
      const Vec2 dir = len > 0.0 ? normalized(b - a) : Vec2{0.0, 0.0};
      for (double t = spacing; t < len - 1e-12; t += spacing) samples.push_back(a + t * dir);
    }
  }
  std::sort(samples.begin(), samples.end(), [](Vec2 l, Vec2 r) {
    return l.x < r.x || (l.x == r.x && l.y < r.y);
  });
  samples.erase(std::unique(samples.begin(), samples.end(),
                            [](Vec2 l, Vec2 r) {
                              return std::abs(l.x - r.x) <= 1e-12 && std::abs(l.y - r.y) <= 1e-12;
                            }),
                samples.end());
  return samples;
}

}  // namespace

SamplingResult sampling_oracle(const ImpreciseInstance& instance, double resolution,
                               const ImpreciseOptions& options) {
  require(instance.planar(), "sampling oracle requires a planar instance");
  require(resolution > 0.0, "resolution must be positive");
  const int n = instance.size();

  double spacing = resolution;
  std::vector<std::vector<Vec2>> samples;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40) fail(ErrorCode::OracleTooLarge, "sample product will not fit the cap");
    samples.clear();
    double product = 1.0;
    for (int r = 0; r < n; ++r) {
      samples.push_back(region_samples(instance.polygons()[static_cast<std::size_t>(r)], spacing));
      product *= static_cast<double>(samples.back().size());
    }
    if (product <= options.oracle_cap) break;
    spacing *= 2.0;
  }

  std::vector<int> pick(static_cast<std::size_t>(n), 0);
  std::vector<int> best_pick;
  double best = std::numeric_limits<double>::infinity();

  // depth-first product scan with running-max pruning
  std::vector<double> running(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<Vec2> chosen(static_cast<std::size_t>(n));
  auto dfs = [&](auto&& self, int level) -> void {
    if (level == n) {
      if (running[static_cast<std::size_t>(n)] < best) {
        best = running[static_cast<std::size_t>(n)];
        best_pick = pick;
      }
      return;
    }
    const auto& opts = samples[static_cast<std::size_t>(level)];
    for (int s = 0; s < static_cast<int>(opts.size()); ++s) {
      double mx = running[static_cast<std::size_t>(level)];
      const Vec2 p = opts[static_cast<std::size_t>(s)];
      for (int j = 0; j < level && mx < best; ++j)
        mx = std::max(mx, norm(p - chosen[static_cast<std::size_t>(j)]));
      if (mx >= best) continue;
      chosen[static_cast<std::size_t>(level)] = p;
      pick[static_cast<std::size_t>(level)] = s;
      running[static_cast<std::size_t>(level) + 1] = mx;
      self(self, level + 1);
    }
  };
  dfs(dfs, 0);

  SamplingResult out;
  out.effective_resolution = spacing;
  if (best_pick.empty()) {
    // single-sample degenerate case: any selection has value 0
    best = 0.0;
    best_pick.assign(static_cast<std::size_t>(n), 0);
  }
  out.value = best;
  for (int r = 0; r < n; ++r)
    out.selection.points.push_back(
        to_point(samples[static_cast<std::size_t>(r)][static_cast<std::size_t>(best_pick[static_cast<std::size_t>(r)])]));
  return out;
}

namespace {

SolveOutcome solve_impl(const ImpreciseInstance& instance, double eps,
                        const ImpreciseOptions& options, int depth) {
  SolveOutcome out;
  if (instance.size() == 1) {
    out.path = SolvePath::SingleRegion;
    out.value = 0.0;
    if (instance.planar())
      out.selection.points = {to_point(instance.polygons()[0].vertices()[0])};
    else
      out.selection.points = {*common_point(instance)};
    return out;
  }

  if (const auto cp = common_point(instance); cp.has_value()) {
    out.path = SolvePath::CommonPoint;
    out.value = 0.0;
    out.selection.points.assign(static_cast<std::size_t>(instance.size()), *cp);
    return out;
  }

  require(instance.planar(), "only planar instances support the approximation pipeline");

  if (max_separability_set(instance).has_value()) {
    try {
      PipelineReport report = min_diam_eps(instance, eps, options);
      out.path = SolvePath::Pipeline;
      out.value = report.final_value;
      out.selection = report.final_selection;
      out.warnings = report.warnings;
      out.report = std::move(report);
      return out;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GridTooFine && e.code() != ErrorCode::RegionOutsideFocus) throw;
      out.warnings.push_back(std::string("pipeline fell back to sampling: ") + e.what());
    }
  } else if (depth < options.max_decompose_depth) {
    std::vector<detail::DecomposePart> parts;
    try {
      parts = detail::decompose_detailed(instance);
    } catch (const Error& e) {
      out.warnings.push_back(std::string("decomposition fell back to sampling: ") + e.what());
    }
    if (!parts.empty()) {
      std::optional<SolveOutcome> best;
      std::pair<int, int> best_merged{-1, -1};
      std::vector<int> best_origin;
      for (detail::DecomposePart& part : parts) {
        SolveOutcome sub = solve_impl(part.instance, eps, options, depth + 1);
        for (std::string& w : sub.warnings) out.warnings.push_back(std::move(w));
        if (!best.has_value() || sub.value < best->value) {
          best = std::move(sub);
          best_merged = part.merged;
          best_origin = part.origin;
        }
      }
      out.path = SolvePath::Decomposed;
      out.value = best->value;
      out.selection.points.assign(static_cast<std::size_t>(instance.size()), Point(0.0, 0.0));
      for (std::size_t p = 0; p < best_origin.size(); ++p)
        out.selection.points[static_cast<std::size_t>(best_origin[p])] = best->selection.points[p];
      if (best_merged.first >= 0)
        out.selection.points[static_cast<std::size_t>(best_merged.second)] =
            out.selection.points[static_cast<std::size_t>(best_merged.first)];
      return out;
    }
  } else {
    out.warnings.push_back("decomposition depth exhausted; using the sampling oracle");
  }

  // fallback: sampling oracle at a scale-adaptive resolution
  std::vector<Point> corners;
  for (const ConvexPolygon& poly : instance.polygons())
    for (const Vec2& v : poly.vertices()) corners.push_back(to_point(v));
  const BoundingBox box = bounding_box(corners);
  const double diag = dist(box.min_corner, box.max_corner, Metric::L2);
  const double res = std::max(1e-6, diag / 200.0);
  const SamplingResult oracle = sampling_oracle(instance, res, options);
  out.path = SolvePath::OracleFallback;
  out.value = oracle.value;
  out.selection = oracle.selection;
  out.warnings.push_back("sampling fallback at resolution " + std::to_string(oracle.effective_resolution));
  return out;
}

}  // namespace

SolveOutcome solve_imprecise(const ImpreciseInstance& instance, double eps,
                             const ImpreciseOptions& options) {
  require(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
  return solve_impl(instance, eps, options, 0);
}

}  // namespace mindiam
