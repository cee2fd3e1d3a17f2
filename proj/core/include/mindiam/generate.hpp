#pragma once

#include <cstdint>
#include <random>

#include "mindiam/imprecise.hpp"
#include "mindiam/mindcs.hpp"

namespace mindiam {

/// Snaps a coordinate onto the 1/1024 lattice. Generated instances live on
/// this lattice so that integer translations and power-of-two scalings stay
/// exact in floating point.
double snap_coord(double v);

struct IndecisiveGenParams {
  int dim = 2;
  int num_colors = 3;
  int max_class_size = 4;
  double spread = 10.0;
};

IndecisiveInstance random_indecisive(const IndecisiveGenParams& params, std::uint64_t seed);

struct ImpreciseGenParams {
  int num_regions = 3;
  int max_vertices = 6;
  double min_radius = 0.05;
  double max_radius = 0.15;
  double spread = 8.0;
  double min_center_gap = 1.5;
};

/// Convex polygon with at most max_vertices vertices around `center`.
ConvexPolygon random_convex_polygon(Vec2 center, double radius, int max_vertices,
                                    std::mt19937_64& rng);

/// Regions placed so that every pair is disjoint (centers farther apart than
/// the radii can bridge).
ImpreciseInstance random_separable_imprecise(const ImpreciseGenParams& params, std::uint64_t seed);

/// Regions that all contain one shared point.
ImpreciseInstance random_common_point_imprecise(int num_regions, std::uint64_t seed);

/// Three strips along the sides of a triangle: every pair overlaps near a
/// corner while the triple intersection is empty.
ImpreciseInstance random_triple_overlap_ring(std::uint64_t seed);

}  // namespace mindiam
