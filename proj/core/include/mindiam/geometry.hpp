#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mindiam/errors.hpp"

namespace mindiam {

/// Absolute tolerance for membership and side-of-line tests.
inline constexpr double kGeomTol = 1e-9;
/// Polygon areas below this are treated as degenerate.
inline constexpr double kAreaTol = 1e-12;
/// Default cap on polygon complexity (vertex count).
inline constexpr int kMaxPolygonVertices = 64;

enum class Metric { L1, L2 };

/// A point in d-dimensional space, d >= 1. Coordinates must be finite.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c);
  Point(double x, double y) : coords{x, y} {}

  int dim() const { return static_cast<int>(coords.size()); }
  double x() const { return coords[0]; }
  double y() const { return coords[1]; }
  double operator[](int k) const { return coords[static_cast<std::size_t>(k)]; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords == b.coords; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
};

double dist(const Point& p, const Point& q, Metric metric);

struct DiameterResult {
  double value = 0.0;
  std::pair<int, int> witness{0, 0};
};

/// Exact max over all pairs; witness is the lexicographically smallest
/// index pair among ties. Throws on empty input.
DiameterResult diameter(const std::vector<Point>& points, Metric metric);

struct BoundingBox {
  Point min_corner;
  Point max_corner;
};

BoundingBox bounding_box(const std::vector<Point>& points);

/// Planar vector helper used by the polygon machinery.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
Vec2 normalized(Vec2 a);
/// Rotates a by +90 degrees (left normal of a direction).
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 to_vec2(const Point& p) { return {p.x(), p.y()}; }
inline Point to_point(Vec2 v) { return Point(v.x, v.y); }

/// A convex region in the plane given by its vertices in counter-clockwise
/// order. One vertex (a point) and two vertices (a segment) are legal
/// degenerate regions. Construction collapses collinear triples and rejects
/// duplicate vertices and clockwise input.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices, int max_vertices = kMaxPolygonVertices);
  explicit ConvexPolygon(const std::vector<Point>& vertices, int max_vertices = kMaxPolygonVertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  bool degenerate() const { return size() < 3; }

  double area() const;
  Vec2 centroid() const;
  BoundingBox bbox() const;

 private:
  std::vector<Vec2> vertices_;
};

/// True iff p lies inside poly or on its boundary (per-edge signed-area test
/// with tolerance kGeomTol).
bool contains(const ConvexPolygon& poly, const Point& p);
bool contains(const ConvexPolygon& poly, Vec2 p);

/// Intersection of two convex regions, or nullopt when it is empty.
std::optional<ConvexPolygon> clip_convex(const ConvexPolygon& a, const ConvexPolygon& b);

/// Convex pieces tiling the difference a \ b (interior-disjoint, union equal
/// up to boundary tolerance). Throws HoleTopology when b is strictly interior
/// to a, which would make the difference an annulus.
std::vector<ConvexPolygon> subtract_and_triangulate(const ConvexPolygon& a, const ConvexPolygon& b);

/// A directed line through `point`; `direction` has unit length. The line's
/// positive side is to the left of the direction.
struct OrientedLine {
  Point point;
  Vec2 direction;

  /// Signed distance of x from the line; positive on the left side.
  double signed_distance(Vec2 x) const;
};

/// The two inner common tangents of two disjoint convex regions, oriented so
/// that `a` lies in the closed positive half-plane of each line and `b` in
/// the closed negative one. Returns nullopt when the regions intersect or
/// touch. When the tangents coincide (both regions on a common line), two
/// copies of the mid-gap perpendicular are returned.
std::optional<std::pair<OrientedLine, OrientedLine>> inner_tangents(const ConvexPolygon& a,
                                                                    const ConvexPolygon& b);

/// Smallest distance between two convex regions (0 when they intersect).
double region_distance(const ConvexPolygon& a, const ConvexPolygon& b);

namespace detail {
/// Clips a vertex ring against the half-plane dot(n, x) <= c.
std::vector<Vec2> clip_ring_halfplane(const std::vector<Vec2>& ring, Vec2 n, double c);
/// Cleans up a clip result (deduplication, collinear collapse); nullopt when
/// nothing remains.
std::optional<ConvexPolygon> sanitize_clip(std::vector<Vec2> ring);
}  // namespace detail

}  // namespace mindiam
