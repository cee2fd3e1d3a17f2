#pragma once

#include <optional>
#include <random>
#include <vector>

#include "mindiam/geometry.hpp"
#include "mindiam/lp.hpp"

namespace mindiam::test {

/// Exhaustive vertex-enumeration LP baseline: solves every square subsystem
/// of active rows (constraint rows plus bound rows), keeps feasible vertices,
/// and minimizes the objective over them. nullopt when no feasible vertex
/// exists. Only meaningful for bounded programs.
std::optional<double> lp_vertex_enumeration(const LinearProgram& lp);

/// Separation angle baseline: scans unit normals, measures the closed arc of
/// directions along which the regions are separated, and converts the arc
/// width into the wedge angle. Matches the inner-tangent construction on
/// full-dimensional disjoint regions.
double separation_angle_scan(const ConvexPolygon& a, const ConvexPolygon& b, int steps = 20000);

/// Membership count of p among the pieces, skipping points within `band` of
/// any piece edge (used to validate difference decompositions).
struct MembershipCount {
  int pieces_containing = 0;
  bool near_boundary = false;
};
MembershipCount piece_membership(const std::vector<ConvexPolygon>& pieces, Vec2 p, double band);

/// True when p is within `band` of any edge (or vertex) of the polygon.
bool near_polygon_boundary(const ConvexPolygon& poly, Vec2 p, double band);

}  // namespace mindiam::test
