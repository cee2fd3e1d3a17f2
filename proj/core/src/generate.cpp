#include "mindiam/generate.hpp"

#include <algorithm>
#include <cmath>

namespace mindiam {

double snap_coord(double v) { return std::floor(v * 1024.0 + 0.5) / 1024.0; }

IndecisiveInstance random_indecisive(const IndecisiveGenParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, params.spread);
  std::uniform_int_distribution<int> class_size(1, params.max_class_size);
  std::vector<std::vector<Point>> classes;
  for (int c = 0; c < params.num_colors; ++c) {
    std::vector<Point> cls;
    const int k = class_size(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<double> coords(static_cast<std::size_t>(params.dim));
      for (double& v : coords) v = snap_coord(coord(rng));
      cls.emplace_back(std::move(coords));
    }
    classes.push_back(std::move(cls));
  }
  return IndecisiveInstance(std::move(classes));
}

ConvexPolygon random_convex_polygon(Vec2 center, double radius, int max_vertices,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nverts(3, std::max(3, max_vertices));
  std::uniform_real_distribution<double> angle_jitter(0.0, 1.0);
  std::uniform_real_distribution<double> rad(0.6 * radius, radius);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int k = nverts(rng);
    std::vector<double> angles;
    for (int i = 0; i < k; ++i)
      angles.push_back(2.0 * std::acos(-1.0) * (i + 0.8 * angle_jitter(rng)) / k);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec2> vs;
    for (double a : angles) {
      const double r = rad(rng);
      vs.push_back({snap_coord(center.x + r * std::cos(a)), snap_coord(center.y + r * std::sin(a))});
    }
    try {
      ConvexPolygon poly(vs);
      if (poly.size() >= 3) return poly;
    } catch (const Error&) {
      // snapped vertices degenerated; retry
    }
  }
  // guaranteed-valid fallback: an axis-aligned square
  const double r = std::max(radius, 4.0 / 1024.0);
  return ConvexPolygon(std::vector<Vec2>{{snap_coord(center.x - r), snap_coord(center.y - r)},
                                         {snap_coord(center.x + r), snap_coord(center.y - r)},
                                         {snap_coord(center.x + r), snap_coord(center.y + r)},
                                         {snap_coord(center.x - r), snap_coord(center.y + r)}});
}

ImpreciseInstance random_separable_imprecise(const ImpreciseGenParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, params.spread);
  std::uniform_real_distribution<double> rad(params.min_radius, params.max_radius);
  std::vector<Vec2> centers;
  while (static_cast<int>(centers.size()) < params.num_regions) {
    const Vec2 c{coord(rng), coord(rng)};
    bool ok = true;
    for (const Vec2& other : centers)
      if (norm(c - other) < 2.0 * params.max_radius + params.min_center_gap) ok = false;
    if (ok) centers.push_back(c);
  }
  std::vector<ConvexPolygon> regions;
  for (const Vec2& c : centers)
    regions.push_back(random_convex_polygon(c, rad(rng), params.max_vertices, rng));
  return ImpreciseInstance(std::move(regions));
}

ImpreciseInstance random_common_point_imprecise(int num_regions, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(2.0, 8.0);
  std::uniform_real_distribution<double> rad(0.8, 1.6);
  std::uniform_real_distribution<double> off(-0.3, 0.3);
  const Vec2 shared{snap_coord(coord(rng)), snap_coord(coord(rng))};
  std::vector<ConvexPolygon> regions;
  while (static_cast<int>(regions.size()) < num_regions) {
    const Vec2 center = shared + Vec2{off(rng), off(rng)};
    ConvexPolygon poly = random_convex_polygon(center, rad(rng), 6, rng);
    if (contains(poly, shared)) regions.push_back(std::move(poly));
  }
  return ImpreciseInstance(std::move(regions));
}

ImpreciseInstance random_triple_overlap_ring(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(5.0, 8.0);
  std::uniform_real_distribution<double> width(0.6, 1.0);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);

  for (int attempt = 0; attempt < 64; ++attempt) {
    const double s = scale(rng);
    const Vec2 c1{jitter(rng), jitter(rng)};
    const Vec2 c2 = c1 + Vec2{s, jitter(rng)};
    const Vec2 c3 = c1 + Vec2{0.5 * s + jitter(rng), 0.9 * s};
    const double w = width(rng);

    auto strip = [&](Vec2 a, Vec2 b) {
      const Vec2 dir = normalized(b - a);
      const Vec2 n = perp(dir);
      // extend past the corners so neighbouring strips overlap there
      const Vec2 lo = a - (0.8 * w) * dir;
      const Vec2 hi = b + (0.8 * w) * dir;
      std::vector<Vec2> vs{lo + (0.5 * w) * n, lo - (0.5 * w) * n, hi - (0.5 * w) * n,
                           hi + (0.5 * w) * n};
      for (Vec2& v : vs) v = {snap_coord(v.x), snap_coord(v.y)};
      // orientation depends on the edge direction; fix to CCW via the area sign
      double area2 = 0.0;
      for (std::size_t i = 0; i < vs.size(); ++i)
        area2 += cross(vs[i], vs[(i + 1) % vs.size()]);
      if (area2 < 0.0) std::reverse(vs.begin(), vs.end());
      return ConvexPolygon(vs);
    };

    std::vector<ConvexPolygon> regions{strip(c1, c2), strip(c2, c3), strip(c3, c1)};
    bool pairwise = true;
    for (int i = 0; i < 3 && pairwise; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (!clip_convex(regions[static_cast<std::size_t>(i)], regions[static_cast<std::size_t>(j)]).has_value())
          pairwise = false;
    if (!pairwise) continue;
    ImpreciseInstance instance(std::move(regions));
    if (common_point(instance).has_value()) continue;
    return instance;
  }
  fail(ErrorCode::PreconditionViolation, "could not build a triple-overlap ring");
}

}  // namespace mindiam
