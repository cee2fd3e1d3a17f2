#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mindiam::test {

namespace {

// Gaussian elimination with partial pivoting; false when singular.
bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    if (std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]) < 1e-9) return false;
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                       a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  x.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    x[static_cast<std::size_t>(i)] =
        b[static_cast<std::size_t>(i)] / a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  return true;
}

}  // namespace

std::optional<double> lp_vertex_enumeration(const LinearProgram& lp) {
  const int n = lp.num_vars();
  // assemble all rows: constraints plus finite bounds
  std::vector<std::vector<double>> rows = lp.rows;
  std::vector<double> rhs = lp.rhs;
  for (int j = 0; j < n; ++j) {
    if (!lp.lower.empty() && lp.lower[static_cast<std::size_t>(j)].has_value()) {
      std::vector<double> r(static_cast<std::size_t>(n), 0.0);
      r[static_cast<std::size_t>(j)] = -1.0;
      rows.push_back(std::move(r));
      rhs.push_back(-*lp.lower[static_cast<std::size_t>(j)]);
    }
    if (!lp.upper.empty() && lp.upper[static_cast<std::size_t>(j)].has_value()) {
      std::vector<double> r(static_cast<std::size_t>(n), 0.0);
      r[static_cast<std::size_t>(j)] = 1.0;
      rows.push_back(std::move(r));
      rhs.push_back(*lp.upper[static_cast<std::size_t>(j)]);
    }
  }
  const int m = static_cast<int>(rows.size());
  if (m < n) return std::nullopt;

  std::optional<double> best;
  std::vector<int> comb(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comb[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int idx : comb) {
      a.push_back(rows[static_cast<std::size_t>(idx)]);
      b.push_back(rhs[static_cast<std::size_t>(idx)]);
    }
    std::vector<double> x;
    if (solve_square(std::move(a), std::move(b), x)) {
      bool feasible = true;
      for (int r = 0; r < m && feasible; ++r) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j)
          lhs += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        if (lhs > rhs[static_cast<std::size_t>(r)] + 1e-7) feasible = false;
      }
      if (feasible) {
        double obj = 0.0;
        for (int j = 0; j < n; ++j)
          obj += lp.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        if (!best.has_value() || obj < *best) best = obj;
      }
    }
    int k = n - 1;
    while (k >= 0 && comb[static_cast<std::size_t>(k)] == m - n + k) --k;
    if (k < 0) break;
    ++comb[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j)
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return best;
}

double separation_angle_scan(const ConvexPolygon& a, const ConvexPolygon& b, int steps) {
  const double pi = std::acos(-1.0);
  auto separated_along = [&](double angle) {
    const Vec2 n{std::cos(angle), std::sin(angle)};
    double amin = std::numeric_limits<double>::infinity();
    double bmax = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : a.vertices()) amin = std::min(amin, dot(n, v));
    for (const Vec2& v : b.vertices()) bmax = std::max(bmax, dot(n, v));
    return amin - bmax;  // > 0: strictly separated with a on the high side
  };

  const double step = 2.0 * pi / steps;
  std::vector<char> sep(static_cast<std::size_t>(steps));
  int count = 0;
  for (int i = 0; i < steps; ++i) {
    sep[static_cast<std::size_t>(i)] = separated_along(i * step) > 0.0 ? 1 : 0;
    count += sep[static_cast<std::size_t>(i)];
  }
  if (count == 0) return 0.0;

  auto refine = [&](double inside, double outside) {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (inside + outside);
      if (separated_along(mid) > 0.0)
        inside = mid;
      else
        outside = mid;
    }
    return inside;
  };

  // the separated directions form one arc; locate its two transitions
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < steps; ++i) {
    const int j = (i + 1) % steps;
    if (!sep[static_cast<std::size_t>(i)] && sep[static_cast<std::size_t>(j)])
      lo = refine(j * step, i * step);
    if (sep[static_cast<std::size_t>(i)] && !sep[static_cast<std::size_t>(j)])
      hi = refine(i * step, j * step);
  }
  double arc = hi - lo;
  while (arc < 0.0) arc += 2.0 * pi;
  while (arc > 2.0 * pi) arc -= 2.0 * pi;
  return pi - arc;
}

bool near_polygon_boundary(const ConvexPolygon& poly, Vec2 p, double band) {
  const auto& vs = poly.vertices();
  if (vs.size() == 1) return norm(p - vs[0]) <= band;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2 a = vs[i];
    const Vec2 b = vs[(i + 1) % vs.size()];
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    const double t = len2 > 0.0 ? std::clamp(dot(p - a, ab) / len2, 0.0, 1.0) : 0.0;
    if (norm(p - (a + t * ab)) <= band) return true;
  }
  return false;
}

MembershipCount piece_membership(const std::vector<ConvexPolygon>& pieces, Vec2 p, double band) {
  MembershipCount out;
  for (const ConvexPolygon& piece : pieces) {
    if (near_polygon_boundary(piece, p, band)) {
      out.near_boundary = true;
      return out;
    }
    if (contains(piece, p)) ++out.pieces_containing;
  }
  return out;
}

}  // namespace mindiam::test
