#include <doctest.h>

#include <cmath>
#include <random>

#include "mindiam/geometry.hpp"
#include "oracles.hpp"

using namespace mindiam;

namespace {

ConvexPolygon square(double x0, double y0, double side) {
  return ConvexPolygon(std::vector<Vec2>{
      {x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}});
}

ConvexPolygon rect(double x0, double y0, double x1, double y1) {
  return ConvexPolygon(std::vector<Vec2>{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace

TEST_CASE("dist basics") {
  CHECK(dist(Point(0, 0), Point(3, 4), Metric::L2) == doctest::Approx(5.0));
  CHECK(dist(Point(0, 0), Point(3, 4), Metric::L1) == doctest::Approx(7.0));
  CHECK(dist(Point(1, 1), Point(1, 1), Metric::L1) == 0.0);
  CHECK_THROWS_AS(dist(Point(0, 0), Point({1.0, 2.0, 3.0}), Metric::L2), Error);
}

TEST_CASE("metric axioms and norm ordering") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int it = 0; it < 200; ++it) {
    const Point p(coord(rng), coord(rng));
    const Point q(coord(rng), coord(rng));
    const Point r(coord(rng), coord(rng));
    for (Metric m : {Metric::L1, Metric::L2}) {
      CHECK(dist(p, q, m) >= 0.0);
      CHECK(dist(p, q, m) == doctest::Approx(dist(q, p, m)));
      CHECK(dist(p, r, m) <= dist(p, q, m) + dist(q, r, m) + 1e-12);
    }
    const double l1 = dist(p, q, Metric::L1);
    const double l2 = dist(p, q, Metric::L2);
    CHECK(l1 >= l2 - 1e-12);
    CHECK(l1 <= std::sqrt(2.0) * l2 + 1e-12);
  }
}

TEST_CASE("diameter examples") {
  const DiameterResult tri = diameter({Point(0, 0), Point(1, 0), Point(0, 1)}, Metric::L2);
  CHECK(tri.value == doctest::Approx(std::sqrt(2.0)));
  CHECK(tri.witness == std::pair<int, int>{1, 2});

  const DiameterResult single = diameter({Point(5, 5)}, Metric::L2);
  CHECK(single.value == 0.0);
  CHECK(single.witness == std::pair<int, int>{0, 0});

  const DiameterResult sq =
      diameter({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)}, Metric::L1);
  CHECK(sq.value == doctest::Approx(2.0));

  CHECK_THROWS_AS(diameter({}, Metric::L2), Error);
}

TEST_CASE("diameter agrees with a rescan and ignores order") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(0.0, 5.0);
  for (int it = 0; it < 50; ++it) {
    std::vector<Point> pts;
    const int n = 2 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
    const DiameterResult d = diameter(pts, Metric::L2);
    double rescan = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        rescan = std::max(rescan, dist(pts[i], pts[j], Metric::L2));
    CHECK(d.value == doctest::Approx(rescan));
    std::vector<Point> shuffled = pts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(diameter(shuffled, Metric::L2).value == doctest::Approx(d.value));
  }
}

TEST_CASE("bounding box") {
  const BoundingBox bb = bounding_box({Point(0, 1), Point(2, -1)});
  CHECK(bb.min_corner == Point(0, -1));
  CHECK(bb.max_corner == Point(2, 1));
  const BoundingBox single = bounding_box({Point(3, 3)});
  CHECK(single.min_corner == single.max_corner);
  const BoundingBox sq = bounding_box({Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)});
  CHECK(sq.min_corner == Point(0, 0));
  CHECK(sq.max_corner == Point(1, 1));
  CHECK_THROWS_AS(bounding_box({}), Error);
}

TEST_CASE("polygon construction rules") {
  // collinear middle vertex collapses
  const ConvexPolygon tri(std::vector<Vec2>{{0, 0}, {1, 0}, {2, 0}, {2, 2}});
  CHECK(tri.size() == 3);
  // duplicates rejected
  CHECK_THROWS_AS(ConvexPolygon(std::vector<Vec2>{{0, 0}, {1, 0}, {1, 0}, {0, 1}}), Error);
  // clockwise rejected
  CHECK_THROWS_AS(ConvexPolygon(std::vector<Vec2>{{0, 0}, {0, 1}, {1, 1}, {1, 0}}), Error);
  // degenerate regions are legal
  CHECK(ConvexPolygon(std::vector<Vec2>{{2, 3}}).size() == 1);
  CHECK(ConvexPolygon(std::vector<Vec2>{{0, 0}, {1, 1}}).size() == 2);
  // fully collinear input collapses to a segment
  CHECK(ConvexPolygon(std::vector<Vec2>{{0, 0}, {1, 0}, {3, 0}}).size() == 2);
  // vertex cap
  std::vector<Vec2> many;
  for (int i = 0; i < 70; ++i)
    many.push_back({std::cos(i * 0.0897), std::sin(i * 0.0897)});
  CHECK_THROWS_AS(ConvexPolygon(many), Error);
}

TEST_CASE("contains") {
  const ConvexPolygon sq = square(0, 0, 1);
  CHECK(contains(sq, Point(0.5, 0.5)));
  CHECK(contains(sq, Point(1.0, 0.5)));  // boundary counts
  CHECK_FALSE(contains(sq, Point(1.1, 0.5)));
  const ConvexPolygon pt(std::vector<Vec2>{{2, 3}});
  CHECK(contains(pt, Point(2, 3)));
  CHECK_FALSE(contains(pt, Point(2.1, 3)));
  const ConvexPolygon seg(std::vector<Vec2>{{0, 0}, {2, 2}});
  CHECK(contains(seg, Point(1, 1)));
  CHECK_FALSE(contains(seg, Point(1, 1.2)));
}

TEST_CASE("clip_convex examples") {
  const auto overlap = clip_convex(rect(0, 0, 2, 2), rect(1, 1, 3, 3));
  REQUIRE(overlap.has_value());
  CHECK(overlap->area() == doctest::Approx(1.0));
  const BoundingBox bb = overlap->bbox();
  CHECK(bb.min_corner == Point(1, 1));
  CHECK(bb.max_corner == Point(2, 2));

  CHECK_FALSE(clip_convex(square(0, 0, 1), square(5, 0, 1)).has_value());

  // containment: A inside B returns A
  const ConvexPolygon small = square(1, 1, 0.5);
  const auto inside = clip_convex(small, rect(0, 0, 3, 3));
  REQUIRE(inside.has_value());
  CHECK(inside->area() == doctest::Approx(small.area()));
}

TEST_CASE("clip_convex commutes and bounds area") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> coord(0.0, 4.0);
  std::uniform_real_distribution<double> side(0.5, 2.5);
  for (int it = 0; it < 100; ++it) {
    const ConvexPolygon a = square(coord(rng), coord(rng), side(rng));
    const ConvexPolygon b = square(coord(rng), coord(rng), side(rng));
    const auto ab = clip_convex(a, b);
    const auto ba = clip_convex(b, a);
    CHECK(ab.has_value() == ba.has_value());
    if (ab.has_value()) {
      CHECK(ab->area() == doctest::Approx(ba->area()).epsilon(1e-9));
      CHECK(ab->area() <= std::min(a.area(), b.area()) + 1e-9);
    }
  }
}

TEST_CASE("clip_convex degenerate inputs") {
  const ConvexPolygon sq = square(0, 0, 2);
  const ConvexPolygon pt(std::vector<Vec2>{{1, 1}});
  REQUIRE(clip_convex(sq, pt).has_value());
  CHECK_FALSE(clip_convex(sq, ConvexPolygon(std::vector<Vec2>{{5, 5}})).has_value());
  const ConvexPolygon seg(std::vector<Vec2>{{-1, 1}, {3, 1}});
  const auto cut = clip_convex(seg, sq);
  REQUIRE(cut.has_value());
  CHECK(cut->size() == 2);
  const auto touching = clip_convex(ConvexPolygon(std::vector<Vec2>{{0, 0}, {1, 0}}),
                                    ConvexPolygon(std::vector<Vec2>{{1, 0}, {2, 0}}));
  REQUIRE(touching.has_value());
  CHECK(touching->size() == 1);
}

TEST_CASE("subtract_and_triangulate examples") {
  // A = [0,2]^2, B = [1,3]x[0,2] -> single strip [0,1]x[0,2]
  const auto strip = subtract_and_triangulate(rect(0, 0, 2, 2), rect(1, 0, 3, 2));
  double area = 0.0;
  for (const ConvexPolygon& piece : strip) area += piece.area();
  CHECK(area == doctest::Approx(2.0));

  // disjoint: difference is all of A
  const auto whole = subtract_and_triangulate(square(0, 0, 1), square(5, 0, 1));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].area() == doctest::Approx(1.0));

  // L-shape: total area 4 - 1
  const auto ell = subtract_and_triangulate(rect(0, 0, 2, 2), rect(1, 1, 3, 3));
  double ell_area = 0.0;
  for (const ConvexPolygon& piece : ell) ell_area += piece.area();
  CHECK(ell_area == doctest::Approx(3.0));

  // A fully inside B: nothing remains
  CHECK(subtract_and_triangulate(square(1, 1, 1), rect(0, 0, 3, 3)).empty());

  // B strictly interior to A: annulus rejected
  CHECK_THROWS_AS(subtract_and_triangulate(rect(0, 0, 4, 4), square(1, 1, 1)), Error);
}

TEST_CASE("difference pieces tile A minus interior of B") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  std::uniform_real_distribution<double> side(0.8, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int it = 0; it < 40; ++it) {
    const ConvexPolygon a = square(coord(rng), coord(rng), side(rng));
    const ConvexPolygon b = square(coord(rng), coord(rng), side(rng));
    std::vector<ConvexPolygon> pieces;
    try {
      pieces = subtract_and_triangulate(a, b);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HoleTopology);
      continue;
    }
    for (const ConvexPolygon& piece : pieces) CHECK(piece.size() >= 3);
    const BoundingBox bb = a.bbox();
    for (int s = 0; s < 250; ++s) {
      const Vec2 p{bb.min_corner.x() + unit(rng) * (bb.max_corner.x() - bb.min_corner.x()),
                   bb.min_corner.y() + unit(rng) * (bb.max_corner.y() - bb.min_corner.y())};
      if (test::near_polygon_boundary(a, p, 1e-6) || test::near_polygon_boundary(b, p, 1e-6))
        continue;
      const auto mc = test::piece_membership(pieces, p, 1e-6);
      if (mc.near_boundary) continue;
      const int expected = contains(a, p) && !contains(b, p) ? 1 : 0;
      CHECK(mc.pieces_containing == expected);
      ++checked;
    }
  }
  CHECK(checked > 2000);
}

TEST_CASE("inner tangents separate two squares") {
  const ConvexPolygon a = square(0, 0, 1);
  const ConvexPolygon b = square(3, 0, 1);
  const auto tangents = inner_tangents(a, b);
  REQUIRE(tangents.has_value());
  for (const OrientedLine& line : {tangents->first, tangents->second}) {
    // both tangents pass through the gap between x=1 and x=3
    for (const Vec2& v : a.vertices()) CHECK(line.signed_distance(v) >= -1e-9);
    for (const Vec2& v : b.vertices()) CHECK(line.signed_distance(v) <= 1e-9);
    bool touches_a = false, touches_b = false;
    for (const Vec2& v : a.vertices())
      if (std::abs(line.signed_distance(v)) <= 1e-7) touches_a = true;
    for (const Vec2& v : b.vertices())
      if (std::abs(line.signed_distance(v)) <= 1e-7) touches_b = true;
    CHECK(touches_a);
    CHECK(touches_b);
  }
}

TEST_CASE("inner tangents of two points collapse to the mid perpendicular") {
  const ConvexPolygon a(std::vector<Vec2>{{0, 0}});
  const ConvexPolygon b(std::vector<Vec2>{{2, 0}});
  const auto tangents = inner_tangents(a, b);
  REQUIRE(tangents.has_value());
  CHECK(tangents->first.point == Point(1, 0));
  CHECK(std::abs(dot(tangents->first.direction, Vec2{1, 0})) < 1e-12);
  CHECK(tangents->first.signed_distance({0, 0}) >= -1e-12);
  CHECK(tangents->second.signed_distance({2, 0}) <= 1e-12);
}

TEST_CASE("inner tangents refuse intersecting regions") {
  CHECK_FALSE(inner_tangents(square(0, 0, 2), square(1, 1, 2)).has_value());
  // touching squares share an edge point
  CHECK_FALSE(inner_tangents(square(0, 0, 1), square(1, 0, 1)).has_value());
}

TEST_CASE("inner tangents on random disjoint squares keep sides clean") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> side(0.3, 1.5);
  int found = 0;
  while (found < 60) {
    const ConvexPolygon a = square(coord(rng), coord(rng), side(rng));
    const ConvexPolygon b = square(coord(rng), coord(rng), side(rng));
    const auto tangents = inner_tangents(a, b);
    if (!tangents.has_value()) continue;
    ++found;
    for (const OrientedLine& line : {tangents->first, tangents->second}) {
      for (const Vec2& v : a.vertices()) CHECK(line.signed_distance(v) >= -1e-9);
      for (const Vec2& v : b.vertices()) CHECK(line.signed_distance(v) <= 1e-9);
    }
  }
}
