#include "mindiam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mindiam {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::PreconditionViolation, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

Point::Point(std::vector<double> c) : coords(std::move(c)) {
  require(!coords.empty(), "point needs at least one coordinate");
  for (double v : coords) require(finite(v), "point coordinate not finite");
}

double dist(const Point& p, const Point& q, Metric metric) {
  require(p.dim() == q.dim(), "dist: dimension mismatch");
  double acc = 0.0;
  if (metric == Metric::L1) {
    for (int k = 0; k < p.dim(); ++k) acc += std::abs(p[k] - q[k]);
    return acc;
  }
  for (int k = 0; k < p.dim(); ++k) {
    const double d = p[k] - q[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

DiameterResult diameter(const std::vector<Point>& points, Metric metric) {
  require(!points.empty(), "diameter: empty point set");
  DiameterResult best;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = dist(points[i], points[j], metric);
      if (d > best.value) {
        best.value = d;
        best.witness = {i, j};
      }
    }
  }
  return best;
}

BoundingBox bounding_box(const std::vector<Point>& points) {
  require(!points.empty(), "bounding_box: empty point set");
  const int d = points.front().dim();
  std::vector<double> lo(points.front().coords), hi(points.front().coords);
  for (const Point& p : points) {
    require(p.dim() == d, "bounding_box: dimension mismatch");
    for (int k = 0; k < d; ++k) {
      lo[static_cast<std::size_t>(k)] = std::min(lo[static_cast<std::size_t>(k)], p[k]);
      hi[static_cast<std::size_t>(k)] = std::max(hi[static_cast<std::size_t>(k)], p[k]);
    }
  }
  return {Point(std::move(lo)), Point(std::move(hi))};
}

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  require(n > 0.0, "cannot normalize zero vector");
  return {a.x / n, a.y / n};
}

namespace {

// Removes exact-duplicate neighbours and collapses collinear triples of a
// CCW ring until stable. Keeps the two extreme points when everything is
// collinear.
std::vector<Vec2> collapse_ring(std::vector<Vec2> vs, double dup_tol) {
  auto near = [dup_tol](Vec2 a, Vec2 b) {
    return std::abs(a.x - b.x) <= dup_tol && std::abs(a.y - b.y) <= dup_tol;
  };
  // consecutive duplicates (including wrap-around)
  bool changed = true;
  while (changed && vs.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::size_t j = (i + 1) % vs.size();
      if (near(vs[i], vs[j])) {
        vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  if (vs.size() < 3) return vs;
  // collinear middles
  changed = true;
  while (changed && vs.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vec2 a = vs[(i + vs.size() - 1) % vs.size()];
      const Vec2 b = vs[i];
      const Vec2 c = vs[(i + 1) % vs.size()];
      if (std::abs(cross(b - a, c - b)) <= kGeomTol) {
        vs.erase(vs.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return vs;
}

// When >= 2 points are all collinear, keep only the two extremes along the
// carrier direction.
std::vector<Vec2> extremes_on_line(const std::vector<Vec2>& vs) {
  Vec2 dir{0.0, 0.0};
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const Vec2 d = vs[i] - vs[0];
    if (norm(d) > kGeomTol) {
      dir = normalized(d);
      break;
    }
  }
  if (norm(dir) == 0.0) return {vs[0]};
  double lo = 0.0, hi = 0.0;
  Vec2 plo = vs[0], phi = vs[0];
  for (const Vec2& v : vs) {
    const double t = dot(v - vs[0], dir);
    if (t < lo) {
      lo = t;
      plo = v;
    }
    if (t > hi) {
      hi = t;
      phi = v;
    }
  }
  if (norm(phi - plo) <= kGeomTol) return {plo};
  return {plo, phi};
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices, int max_vertices) {
  require(!vertices.empty(), "polygon needs at least one vertex");
  require(static_cast<int>(vertices.size()) <= max_vertices, "polygon vertex count over cap");
  for (const Vec2& v : vertices) require(finite(v.x) && finite(v.y), "polygon vertex not finite");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      require(!(std::abs(vertices[i].x - vertices[j].x) <= 1e-12 &&
                std::abs(vertices[i].y - vertices[j].y) <= 1e-12),
              "duplicate polygon vertices");

  std::vector<Vec2> vs = collapse_ring(std::move(vertices), 1e-12);
  if (vs.size() >= 3) {
    // all collinear rings collapse to a segment
    bool all_collinear = true;
    for (std::size_t i = 0; i < vs.size() && all_collinear; ++i) {
      const Vec2 a = vs[(i + vs.size() - 1) % vs.size()];
      const Vec2 b = vs[i];
      const Vec2 c = vs[(i + 1) % vs.size()];
      if (std::abs(cross(b - a, c - b)) > kGeomTol) all_collinear = false;
    }
    if (all_collinear) vs = extremes_on_line(vs);
  }
  if (vs.size() >= 3) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vec2 a = vs[i];
      const Vec2 b = vs[(i + 1) % vs.size()];
      const Vec2 c = vs[(i + 2) % vs.size()];
      if (cross(b - a, c - b) < -kGeomTol)
        fail(ErrorCode::NotCcw, "polygon vertices are not in counter-clockwise order");
    }
  }
  vertices_ = std::move(vs);
}

ConvexPolygon::ConvexPolygon(const std::vector<Point>& vertices, int max_vertices)
    : ConvexPolygon(
          [&] {
            std::vector<Vec2> vs;
            vs.reserve(vertices.size());
            for (const Point& p : vertices) {
              require(p.dim() == 2, "planar polygon needs 2-d vertices");
              vs.push_back(to_vec2(p));
            }
            return vs;
          }(),
          max_vertices) {}

double ConvexPolygon::area() const {
  if (size() < 3) return 0.0;
  double acc = 0.0;
  for (int i = 0; i < size(); ++i) {
    const Vec2 a = vertices_[static_cast<std::size_t>(i)];
    const Vec2 b = vertices_[static_cast<std::size_t>((i + 1) % size())];
    acc += cross(a, b);
  }
  return 0.5 * acc;
}

Vec2 ConvexPolygon::centroid() const {
  if (size() < 3 || area() < kAreaTol) {
    Vec2 acc{0.0, 0.0};
    for (const Vec2& v : vertices_) acc = acc + v;
    return (1.0 / size()) * acc;
  }
  double a6 = 0.0;
  Vec2 acc{0.0, 0.0};
  for (int i = 0; i < size(); ++i) {
    const Vec2 p = vertices_[static_cast<std::size_t>(i)];
    const Vec2 q = vertices_[static_cast<std::size_t>((i + 1) % size())];
    const double c = cross(p, q);
    acc = acc + c * (p + q);
    a6 += c;
  }
  return (1.0 / (3.0 * a6)) * acc;
}

BoundingBox ConvexPolygon::bbox() const {
  std::vector<Point> pts;
  pts.reserve(vertices_.size());
  for (const Vec2& v : vertices_) pts.push_back(to_point(v));
  return bounding_box(pts);
}

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return norm(p - a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

}  // namespace

bool contains(const ConvexPolygon& poly, Vec2 p) {
  const auto& vs = poly.vertices();
  if (vs.size() == 1) return norm(p - vs[0]) <= kGeomTol;
  if (vs.size() == 2) return point_segment_distance(p, vs[0], vs[1]) <= kGeomTol;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2 a = vs[i];
    const Vec2 b = vs[(i + 1) % vs.size()];
    if (cross(b - a, p - a) < -kGeomTol) return false;
  }
  return true;
}

bool contains(const ConvexPolygon& poly, const Point& p) {
  require(p.dim() == 2, "contains: planar point expected");
  return contains(poly, to_vec2(p));
}

namespace detail {

std::vector<Vec2> clip_ring_halfplane(const std::vector<Vec2>& ring, Vec2 n, double c) {
  std::vector<Vec2> out;
  const std::size_t m = ring.size();
  if (m == 0) return out;
  if (m == 1) {
    if (dot(n, ring[0]) <= c + kGeomTol) out.push_back(ring[0]);
    return out;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % m];
    const double da = dot(n, a) - c;
    const double db = dot(n, b) - c;
    const bool ina = da <= kGeomTol;
    const bool inb = db <= kGeomTol;
    if (ina) out.push_back(a);
    if (ina != inb) {
      const double denom = da - db;
      if (std::abs(denom) > 0.0) {
        const double t = da / denom;
        out.push_back(a + t * (b - a));
      }
    }
  }
  return out;
}

std::optional<ConvexPolygon> sanitize_clip(std::vector<Vec2> ring) {
  std::vector<Vec2> vs = collapse_ring(std::move(ring), kGeomTol);
  // global dedupe for degenerate rings that fold onto themselves
  std::vector<Vec2> uniq;
  for (const Vec2& v : vs) {
    bool seen = false;
    for (const Vec2& u : uniq)
      if (std::abs(u.x - v.x) <= kGeomTol && std::abs(u.y - v.y) <= kGeomTol) seen = true;
    if (!seen) uniq.push_back(v);
  }
  if (uniq.empty()) return std::nullopt;
  if (uniq.size() >= 3) {
    bool all_collinear = true;
    for (std::size_t i = 0; i < uniq.size() && all_collinear; ++i) {
      const Vec2 a = uniq[(i + uniq.size() - 1) % uniq.size()];
      const Vec2 b = uniq[i];
      const Vec2 c = uniq[(i + 1) % uniq.size()];
      if (std::abs(cross(b - a, c - b)) > kGeomTol) all_collinear = false;
    }
    if (all_collinear) uniq = extremes_on_line(uniq);
  }
  return ConvexPolygon(std::move(uniq));
}

}  // namespace detail

namespace {

// Clips `subject`'s vertex ring by every edge half-plane of a fat polygon.
std::optional<ConvexPolygon> clip_by_polygon(const ConvexPolygon& subject,
                                             const ConvexPolygon& clip) {
  std::vector<Vec2> ring = subject.vertices();
  const auto& cv = clip.vertices();
  for (std::size_t i = 0; i < cv.size() && !ring.empty(); ++i) {
    const Vec2 a = cv[i];
    const Vec2 b = cv[(i + 1) % cv.size()];
    // inside of a CCW polygon is the left of each edge: cross(b-a, x-a) >= 0,
    // i.e. dot(n, x) <= c with n the right normal.
    const Vec2 n{b.y - a.y, a.x - b.x};
    const double c = dot(n, a);
    ring = detail::clip_ring_halfplane(ring, n, c);
  }
  if (ring.empty()) return std::nullopt;
  return detail::sanitize_clip(std::move(ring));
}

std::optional<ConvexPolygon> clip_degenerate_pair(const ConvexPolygon& a, const ConvexPolygon& b) {
  const auto& av = a.vertices();
  const auto& bv = b.vertices();
  if (av.size() == 1 && bv.size() == 1)
    return norm(av[0] - bv[0]) <= kGeomTol ? std::optional<ConvexPolygon>(a) : std::nullopt;
  if (av.size() == 1) return contains(b, av[0]) ? std::optional<ConvexPolygon>(a) : std::nullopt;
  if (bv.size() == 1) return contains(a, bv[0]) ? std::optional<ConvexPolygon>(b) : std::nullopt;

  // segment vs segment
  const Vec2 p = av[0], r = av[1] - av[0];
  const Vec2 q = bv[0], s = bv[1] - bv[0];
  const double rxs = cross(r, s);
  if (std::abs(rxs) <= kGeomTol) {
    // parallel: overlap only if collinear
    if (std::abs(cross(q - p, r)) > kGeomTol) return std::nullopt;
    const Vec2 dir = normalized(r);
    const double alo = 0.0, ahi = dot(av[1] - av[0], dir);
    double blo = dot(bv[0] - av[0], dir), bhi = dot(bv[1] - av[0], dir);
    if (blo > bhi) std::swap(blo, bhi);
    const double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
    if (lo > hi + kGeomTol) return std::nullopt;
    const Vec2 plo = av[0] + lo * dir;
    const Vec2 phi = av[0] + hi * dir;
    if (norm(phi - plo) <= kGeomTol) return ConvexPolygon({plo});
    return ConvexPolygon({plo, phi});
  }
  const double t = cross(q - p, s) / rxs;
  const double u = cross(q - p, r) / rxs;
  const double tol = kGeomTol;
  if (t < -tol || t > 1.0 + tol || u < -tol || u > 1.0 + tol) return std::nullopt;
  return ConvexPolygon({p + std::clamp(t, 0.0, 1.0) * r});
}

}  // namespace

std::optional<ConvexPolygon> clip_convex(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (b.size() >= 3) return clip_by_polygon(a, b);
  if (a.size() >= 3) return clip_by_polygon(b, a);
  return clip_degenerate_pair(a, b);
}

std::vector<ConvexPolygon> subtract_and_triangulate(const ConvexPolygon& a,
                                                    const ConvexPolygon& b) {
  if (b.size() < 3 || b.area() < kAreaTol) return {a};

  const auto overlap = clip_convex(a, b);
  if (!overlap.has_value() || overlap->area() < kAreaTol) return {a};

  // a entirely inside b -> empty difference
  {
    bool inside = true;
    for (const Vec2& v : a.vertices())
      if (!contains(b, v)) inside = false;
    if (inside) return {};
  }

  // strict containment of b in a produces an annulus, which the convex
  // decomposition cannot represent
  if (a.size() >= 3) {
    bool strictly_inside = true;
    const auto& av = a.vertices();
    for (const Vec2& w : b.vertices()) {
      for (std::size_t i = 0; i < av.size() && strictly_inside; ++i) {
        const Vec2 u = av[i];
        const Vec2 v = av[(i + 1) % av.size()];
        if (cross(v - u, w - u) <= kGeomTol) strictly_inside = false;
      }
      if (!strictly_inside) break;
    }
    if (strictly_inside)
      fail(ErrorCode::HoleTopology, "second region strictly inside the first");
  }

  // Peel one convex piece per edge of b: the part of the running remainder on
  // the outer side of that edge.
  std::vector<ConvexPolygon> pieces;
  std::vector<Vec2> running = a.vertices();
  const auto& bv = b.vertices();
  for (std::size_t i = 0; i < bv.size() && !running.empty(); ++i) {
    const Vec2 u = bv[i];
    const Vec2 v = bv[(i + 1) % bv.size()];
    const Vec2 n{v.y - u.y, u.x - v.x};  // inside of b: dot(n, x) <= c
    const double c = dot(n, u);
    std::vector<Vec2> outside = detail::clip_ring_halfplane(running, {-n.x, -n.y}, -c);
    if (auto piece = detail::sanitize_clip(std::move(outside));
        piece.has_value() && piece->area() >= kAreaTol) {
      pieces.push_back(std::move(*piece));
    }
    running = detail::clip_ring_halfplane(running, n, c);
  }
  return pieces;
}

double OrientedLine::signed_distance(Vec2 x) const {
  return dot(perp(direction), x - to_vec2(point));
}

double region_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (clip_convex(a, b).has_value()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const auto& av = a.vertices();
  const auto& bv = b.vertices();
  auto scan = [&best](const std::vector<Vec2>& pts, const std::vector<Vec2>& ring) {
    for (const Vec2& p : pts) {
      if (ring.size() == 1) {
        best = std::min(best, norm(p - ring[0]));
        continue;
      }
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const Vec2 u = ring[i];
        const Vec2 v = ring[(i + 1) % ring.size()];
        best = std::min(best, point_segment_distance(p, u, v));
      }
    }
  };
  scan(av, bv);
  scan(bv, av);
  return best;
}

namespace {

// True when every vertex of both regions lies on one common line.
std::optional<Vec2> common_carrier_direction(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Vec2> all = a.vertices();
  all.insert(all.end(), b.vertices().begin(), b.vertices().end());
  Vec2 dir{0.0, 0.0};
  for (std::size_t i = 1; i < all.size(); ++i) {
    const Vec2 d = all[i] - all[0];
    if (norm(d) > kGeomTol) {
      dir = normalized(d);
      break;
    }
  }
  if (norm(dir) == 0.0) return std::nullopt;  // both single coincident points
  for (const Vec2& v : all)
    if (std::abs(cross(dir, v - all[0])) > kGeomTol) return std::nullopt;
  return dir;
}

}  // namespace

std::optional<std::pair<OrientedLine, OrientedLine>> inner_tangents(const ConvexPolygon& a,
                                                                    const ConvexPolygon& b) {
  if (clip_convex(a, b).has_value()) return std::nullopt;

  if (auto dir = common_carrier_direction(a, b); dir.has_value()) {
    // Both regions on one line: the limiting tangents coincide with the
    // perpendicular through the middle of the gap.
    const Vec2 u = *dir;
    double ahi = -std::numeric_limits<double>::infinity();
    double alo = std::numeric_limits<double>::infinity();
    double bhi = -std::numeric_limits<double>::infinity();
    double blo = std::numeric_limits<double>::infinity();
    for (const Vec2& v : a.vertices()) {
      const double t = dot(v, u);
      ahi = std::max(ahi, t);
      alo = std::min(alo, t);
    }
    for (const Vec2& v : b.vertices()) {
      const double t = dot(v, u);
      bhi = std::max(bhi, t);
      blo = std::min(blo, t);
    }
    double mid;
    Vec2 line_dir;
    if (ahi < blo) {
      mid = 0.5 * (ahi + blo);
      line_dir = perp(u);  // a ends up on the left
    } else {
      mid = 0.5 * (bhi + alo);
      line_dir = {-perp(u).x, -perp(u).y};
    }
    const Vec2 base = a.vertices()[0] - dot(a.vertices()[0], u) * u;
    const Point anchor = to_point(base + mid * u);
    OrientedLine line{anchor, line_dir};
    // orient with region a on the nonnegative side
    bool a_left = true;
    for (const Vec2& v : a.vertices())
      if (line.signed_distance(v) < -kGeomTol) a_left = false;
    if (!a_left) line.direction = {-line.direction.x, -line.direction.y};
    return std::make_pair(line, line);
  }

  struct Candidate {
    Vec2 normal;   // unit, oriented with a on dot(n, x) >= c
    double offset = 0.0;
    Vec2 through;
  };
  std::vector<Candidate> candidates;
  auto consider = [&](Vec2 pa, Vec2 pb) {
    const Vec2 d = pb - pa;
    if (norm(d) <= kGeomTol) return;
    Vec2 n = perp(normalized(d));
    double c = dot(n, pa);
    double amin = std::numeric_limits<double>::infinity();
    double amax = -std::numeric_limits<double>::infinity();
    double bmin = std::numeric_limits<double>::infinity();
    double bmax = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : a.vertices()) {
      const double s = dot(n, v) - c;
      amin = std::min(amin, s);
      amax = std::max(amax, s);
    }
    for (const Vec2& v : b.vertices()) {
      const double s = dot(n, v) - c;
      bmin = std::min(bmin, s);
      bmax = std::max(bmax, s);
    }
    if (amin >= -kGeomTol && bmax <= kGeomTol) {
      candidates.push_back({n, c, pa});
    } else if (amax <= kGeomTol && bmin >= -kGeomTol) {
      candidates.push_back({{-n.x, -n.y}, -c, pa});
    }
  };
  for (const Vec2& pa : a.vertices())
    for (const Vec2& pb : b.vertices()) consider(pa, pb);

  // dedupe lines by (normal, offset)
  std::vector<Candidate> distinct;
  for (const Candidate& cand : candidates) {
    bool seen = false;
    for (const Candidate& d : distinct)
      if (norm(cand.normal - d.normal) <= 1e-7 && std::abs(cand.offset - d.offset) <= 1e-7)
        seen = true;
    if (!seen) distinct.push_back(cand);
  }
  if (distinct.empty()) return std::nullopt;
  // pick the pair with the widest normal spread (the two arc endpoints)
  std::size_t bi = 0, bj = distinct.size() > 1 ? 1 : 0;
  double best = -1.0;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i; j < distinct.size(); ++j) {
      const double cosang = std::clamp(dot(distinct[i].normal, distinct[j].normal), -1.0, 1.0);
      const double ang = std::acos(cosang);
      if (ang > best) {
        best = ang;
        bi = i;
        bj = j;
      }
    }
  }
  auto make_line = [](const Candidate& cand) {
    // direction chosen so that the left normal equals cand.normal
    return OrientedLine{to_point(cand.through), Vec2{cand.normal.y, -cand.normal.x}};
  };
  return std::make_pair(make_line(distinct[bi]), make_line(distinct[bj]));
}

}  // namespace mindiam
