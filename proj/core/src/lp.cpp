#include "mindiam/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mindiam/imprecise.hpp"

namespace mindiam {

namespace {

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::PreconditionViolation, what);
}

// Standard-form problem: minimize c.y subject to A y <= b, y >= 0, after the
// bound/free-variable rewrite. `back` maps a standard column to the original
// variable (second = +1 or -1 for split halves), `shift` holds lower bounds.
struct StandardForm {
  std::vector<double> c;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<std::pair<int, int>> back;
  std::vector<double> shift;
  double objective_offset = 0.0;
};

StandardForm to_standard_form(const LinearProgram& lp) {
  const int nv = lp.num_vars();
  require(static_cast<int>(lp.rhs.size()) == lp.num_rows(), "rhs size mismatch");
  require(lp.lower.empty() || static_cast<int>(lp.lower.size()) == nv, "lower bounds size mismatch");
  require(lp.upper.empty() || static_cast<int>(lp.upper.size()) == nv, "upper bounds size mismatch");
  for (const auto& row : lp.rows)
    require(static_cast<int>(row.size()) == nv, "row width mismatch");

  StandardForm sf;
  sf.shift.assign(static_cast<std::size_t>(nv), 0.0);
  std::vector<int> pos_col(static_cast<std::size_t>(nv), -1);
  std::vector<int> neg_col(static_cast<std::size_t>(nv), -1);
  for (int j = 0; j < nv; ++j) {
    const std::optional<double> lo =
        lp.lower.empty() ? std::nullopt : lp.lower[static_cast<std::size_t>(j)];
    if (lo.has_value()) {
      sf.shift[static_cast<std::size_t>(j)] = *lo;
      pos_col[static_cast<std::size_t>(j)] = static_cast<int>(sf.back.size());
      sf.back.emplace_back(j, +1);
    } else {
      pos_col[static_cast<std::size_t>(j)] = static_cast<int>(sf.back.size());
      sf.back.emplace_back(j, +1);
      neg_col[static_cast<std::size_t>(j)] = static_cast<int>(sf.back.size());
      sf.back.emplace_back(j, -1);
    }
  }
  const int ncols = static_cast<int>(sf.back.size());
  sf.c.assign(static_cast<std::size_t>(ncols), 0.0);
  for (int j = 0; j < nv; ++j) {
    const double cj = lp.objective[static_cast<std::size_t>(j)];
    sf.c[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(j)])] += cj;
    if (neg_col[static_cast<std::size_t>(j)] >= 0)
      sf.c[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(j)])] -= cj;
    sf.objective_offset += cj * sf.shift[static_cast<std::size_t>(j)];
  }

  auto add_row = [&](const std::vector<double>& a, double b) {
    std::vector<double> row(static_cast<std::size_t>(ncols), 0.0);
    double rb = b;
    for (int j = 0; j < nv; ++j) {
      const double aj = a[static_cast<std::size_t>(j)];
      if (aj == 0.0) continue;
      row[static_cast<std::size_t>(pos_col[static_cast<std::size_t>(j)])] += aj;
      if (neg_col[static_cast<std::size_t>(j)] >= 0)
        row[static_cast<std::size_t>(neg_col[static_cast<std::size_t>(j)])] -= aj;
      rb -= aj * sf.shift[static_cast<std::size_t>(j)];
    }
    sf.rows.push_back(std::move(row));
    sf.rhs.push_back(rb);
  };

  for (int i = 0; i < lp.num_rows(); ++i) add_row(lp.rows[static_cast<std::size_t>(i)], lp.rhs[static_cast<std::size_t>(i)]);
  for (int j = 0; j < nv; ++j) {
    const std::optional<double> up =
        lp.upper.empty() ? std::nullopt : lp.upper[static_cast<std::size_t>(j)];
    if (!up.has_value()) continue;
    std::vector<double> a(static_cast<std::size_t>(nv), 0.0);
    a[static_cast<std::size_t>(j)] = 1.0;
    add_row(a, *up);
  }
  return sf;
}

// Dense tableau over columns [structural | slack | artificial | rhs].
class Tableau {
 public:
  Tableau(const StandardForm& sf, const SimplexOptions& opt) : opt_(opt) {
    nstruct_ = static_cast<int>(sf.c.size());
    m_ = static_cast<int>(sf.rows.size());
    nslack_ = m_;
    std::vector<int> art_rows;
    for (int i = 0; i < m_; ++i)
      if (sf.rhs[static_cast<std::size_t>(i)] < 0.0) art_rows.push_back(i);
    nart_ = static_cast<int>(art_rows.size());
    width_ = nstruct_ + nslack_ + nart_ + 1;
    a_.assign(static_cast<std::size_t>(m_) * static_cast<std::size_t>(width_), 0.0);
    basis_.assign(static_cast<std::size_t>(m_), -1);

    int next_art = 0;
    for (int i = 0; i < m_; ++i) {
      const double sign = sf.rhs[static_cast<std::size_t>(i)] < 0.0 ? -1.0 : 1.0;
      for (int j = 0; j < nstruct_; ++j)
        at(i, j) = sign * sf.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      at(i, nstruct_ + i) = sign;  // slack
      at(i, width_ - 1) = sign * sf.rhs[static_cast<std::size_t>(i)];
      if (sign < 0.0) {
        const int acol = nstruct_ + nslack_ + next_art++;
        at(i, acol) = 1.0;
        basis_[static_cast<std::size_t>(i)] = acol;
      } else {
        basis_[static_cast<std::size_t>(i)] = nstruct_ + i;
      }
    }
  }

  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(j)]; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(j)]; }
  double rhs(int i) const { return at(i, width_ - 1); }

  bool has_artificials() const { return nart_ > 0; }
  int iterations() const { return iterations_; }

  // minimize sum of artificials; returns the attained value
  double run_phase1() {
    std::vector<double> cost(static_cast<std::size_t>(width_ - 1), 0.0);
    for (int j = nstruct_ + nslack_; j < width_ - 1; ++j) cost[static_cast<std::size_t>(j)] = 1.0;
    return iterate(cost, /*ban_artificials=*/false);
  }

  // After phase 1: pivot leftover artificials out of the basis when possible.
  void purge_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < nstruct_ + nslack_) continue;
      int enter = -1;
      for (int j = 0; j < nstruct_ + nslack_; ++j) {
        if (std::abs(at(i, j)) > opt_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) pivot(i, enter);
      // A row with no eligible pivot is redundant; its artificial stays at
      // value ~0 and never re-enters because phase 2 bans those columns.
    }
  }

  double run_phase2(const std::vector<double>& structural_cost) {
    std::vector<double> cost(static_cast<std::size_t>(width_ - 1), 0.0);
    for (int j = 0; j < nstruct_; ++j) cost[static_cast<std::size_t>(j)] = structural_cost[static_cast<std::size_t>(j)];
    return iterate(cost, /*ban_artificials=*/true);
  }

  bool unbounded() const { return unbounded_; }

  std::vector<double> structural_values() const {
    std::vector<double> x(static_cast<std::size_t>(nstruct_), 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] < nstruct_)
        x[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] = rhs(i);
    return x;
  }

 private:
  void pivot(int row, int col) {
    const double piv = at(row, col);
    for (int j = 0; j < width_; ++j) at(row, j) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = at(i, col);
      if (f == 0.0) continue;
      for (int j = 0; j < width_; ++j) at(i, j) -= f * at(row, j);
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Bland's rule simplex on the given cost vector. Returns the objective.
  double iterate(const std::vector<double>& cost, bool ban_artificials) {
    unbounded_ = false;
    const int limit = ban_artificials ? nstruct_ + nslack_ : width_ - 1;
    for (;;) {
      if (++iterations_ > opt_.max_iterations)
        fail(ErrorCode::IterationLimit, "simplex iteration cap exceeded");
      // reduced costs priced by the current basis
      std::vector<double> y(static_cast<std::size_t>(m_));
      for (int i = 0; i < m_; ++i) {
        const int b = basis_[static_cast<std::size_t>(i)];
        y[static_cast<std::size_t>(i)] = b < static_cast<int>(cost.size()) ? cost[static_cast<std::size_t>(b)] : 0.0;
      }
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        double red = cost[static_cast<std::size_t>(j)];
        for (int i = 0; i < m_; ++i) red -= y[static_cast<std::size_t>(i)] * at(i, j);
        if (red < -opt_.pivot_tol) {
          enter = j;
          break;  // smallest index (Bland)
        }
      }
      if (enter < 0) break;
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        const double aij = at(i, enter);
        if (aij > opt_.pivot_tol) {
          const double ratio = rhs(i) / aij;
          if (ratio < best_ratio - opt_.pivot_tol ||
              (ratio < best_ratio + opt_.pivot_tol && leave >= 0 &&
               basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) {
        unbounded_ = true;
        break;
      }
      pivot(leave, enter);
    }
    double obj = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[static_cast<std::size_t>(i)];
      if (b < static_cast<int>(cost.size())) obj += cost[static_cast<std::size_t>(b)] * rhs(i);
    }
    return obj;
  }

  SimplexOptions opt_;
  int nstruct_ = 0, nslack_ = 0, nart_ = 0, m_ = 0, width_ = 0;
  std::vector<double> a_;
  std::vector<int> basis_;
  int iterations_ = 0;
  bool unbounded_ = false;
};

}  // namespace

LpSolution simplex_solve(const LinearProgram& lp, const SimplexOptions& options) {
  require(lp.num_vars() >= 1, "program needs at least one variable");
  for (double v : lp.objective) require(std::isfinite(v), "objective not finite");
  for (const auto& row : lp.rows)
    for (double v : row) require(std::isfinite(v), "row coefficient not finite");

  const StandardForm sf = to_standard_form(lp);
  Tableau tab(sf, options);

  LpSolution sol;
  if (tab.has_artificials()) {
    const double phase1 = tab.run_phase1();
    if (tab.unbounded() || phase1 > options.feasibility_tol) {
      sol.status = LpStatus::Infeasible;
      sol.iterations = tab.iterations();
      return sol;
    }
    tab.purge_artificials();
  }
  const double obj = tab.run_phase2(sf.c);
  sol.iterations = tab.iterations();
  if (tab.unbounded()) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }
  sol.status = LpStatus::Optimal;
  const std::vector<double> y = tab.structural_values();
  sol.x.assign(static_cast<std::size_t>(lp.num_vars()), 0.0);
  for (std::size_t col = 0; col < sf.back.size(); ++col) {
    const auto [var, sign] = sf.back[col];
    sol.x[static_cast<std::size_t>(var)] += sign * y[col];
  }
  for (int j = 0; j < lp.num_vars(); ++j) sol.x[static_cast<std::size_t>(j)] += sf.shift[static_cast<std::size_t>(j)];
  sol.objective_value = obj + sf.objective_offset;
  return sol;
}

std::vector<Halfspace> region_constraints(const ConvexPolygon& region) {
  const auto& vs = region.vertices();
  std::vector<Halfspace> rows;
  if (vs.size() == 1) {
    const Vec2 v = vs[0];
    rows.push_back({{1.0, 0.0}, v.x});
    rows.push_back({{-1.0, 0.0}, -v.x});
    rows.push_back({{0.0, 1.0}, v.y});
    rows.push_back({{0.0, -1.0}, -v.y});
    return rows;
  }
  if (vs.size() == 2) {
    const Vec2 dir = normalized(vs[1] - vs[0]);
    const Vec2 n = perp(dir);
    const double c = dot(n, vs[0]);
    rows.push_back({{n.x, n.y}, c});
    rows.push_back({{-n.x, -n.y}, -c});
    const double lo = std::min(dot(dir, vs[0]), dot(dir, vs[1]));
    const double hi = std::max(dot(dir, vs[0]), dot(dir, vs[1]));
    rows.push_back({{dir.x, dir.y}, hi});
    rows.push_back({{-dir.x, -dir.y}, -lo});
    return rows;
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec2 a = vs[i];
    const Vec2 b = vs[(i + 1) % vs.size()];
    const Vec2 n{b.y - a.y, a.x - b.x};  // outward for CCW rings
    rows.push_back({{n.x, n.y}, dot(n, a)});
  }
  return rows;
}

int Lp3Layout::gap_column(int i, int j, int k) const {
  // pairs (i, j), i < j, in lexicographic order
  const int pair_index = i * num_regions - i * (i + 1) / 2 + (j - i - 1);
  return num_regions * dim + pair_index * dim + k;
}

std::pair<LinearProgram, Lp3Layout> build_lp3(const ImpreciseInstance& instance) {
  const int n = instance.size();
  require(n >= 2, "relaxation needs at least two regions");
  const int d = instance.dim();

  Lp3Layout layout;
  layout.num_regions = n;
  layout.dim = d;

  LinearProgram lp;
  lp.objective.assign(static_cast<std::size_t>(layout.num_columns()), 0.0);
  lp.objective[static_cast<std::size_t>(layout.ell_column())] = 1.0;
  lp.lower.assign(static_cast<std::size_t>(layout.num_columns()), std::nullopt);
  lp.upper.assign(static_cast<std::size_t>(layout.num_columns()), std::nullopt);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < d; ++k)
        lp.lower[static_cast<std::size_t>(layout.gap_column(i, j, k))] = 0.0;
  lp.lower[static_cast<std::size_t>(layout.ell_column())] = 0.0;

  auto add_row = [&lp, &layout](const std::vector<std::pair<int, double>>& terms, double b) {
    std::vector<double> row(static_cast<std::size_t>(layout.num_columns()), 0.0);
    for (const auto& [col, v] : terms) row[static_cast<std::size_t>(col)] += v;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(b);
  };

  // (a) per pair: sum_k gap <= ell
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<std::pair<int, double>> terms;
      for (int k = 0; k < d; ++k) terms.emplace_back(layout.gap_column(i, j, k), 1.0);
      terms.emplace_back(layout.ell_column(), -1.0);
      add_row(terms, 0.0);
    }
  }
  // (b) region membership rows
  for (int i = 0; i < n; ++i) {
    for (const Halfspace& hs : instance.region_rows(i)) {
      std::vector<std::pair<int, double>> terms;
      for (int k = 0; k < d; ++k)
        terms.emplace_back(layout.s_column(i, k), hs.a[static_cast<std::size_t>(k)]);
      add_row(terms, hs.b);
    }
  }
  // (c) absolute-value rows per pair and axis
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < d; ++k) {
        add_row({{layout.s_column(i, k), 1.0},
                 {layout.s_column(j, k), -1.0},
                 {layout.gap_column(i, j, k), -1.0}},
                0.0);
        add_row({{layout.s_column(j, k), 1.0},
                 {layout.s_column(i, k), -1.0},
                 {layout.gap_column(i, j, k), -1.0}},
                0.0);
      }
    }
  }
  return {std::move(lp), layout};
}

namespace {

// Translation that makes all coordinates of a planar instance nonnegative.
std::vector<double> planar_shift(const ImpreciseInstance& instance) {
  std::vector<double> shift(2, 0.0);
  if (!instance.planar()) return std::vector<double>(static_cast<std::size_t>(instance.dim()), 0.0);
  double minx = 0.0, miny = 0.0;
  for (const ConvexPolygon& poly : instance.polygons())
    for (const Vec2& v : poly.vertices()) {
      minx = std::min(minx, v.x);
      miny = std::min(miny, v.y);
    }
  shift[0] = -minx;
  shift[1] = -miny;
  return shift;
}

ImpreciseInstance translated(const ImpreciseInstance& instance, const std::vector<double>& shift) {
  if (instance.planar()) {
    std::vector<ConvexPolygon> polys;
    for (const ConvexPolygon& poly : instance.polygons()) {
      std::vector<Vec2> vs = poly.vertices();
      for (Vec2& v : vs) {
        v.x += shift[0];
        v.y += shift[1];
      }
      polys.emplace_back(std::move(vs));
    }
    return ImpreciseInstance(std::move(polys));
  }
  std::vector<HalfspaceRegion> regions;
  for (const HalfspaceRegion& r : instance.halfspace_regions()) {
    HalfspaceRegion moved = r;
    for (Halfspace& hs : moved.rows) {
      double adj = 0.0;
      for (int k = 0; k < r.dim; ++k) adj += hs.a[static_cast<std::size_t>(k)] * shift[static_cast<std::size_t>(k)];
      hs.b += adj;
    }
    regions.push_back(std::move(moved));
  }
  return ImpreciseInstance(instance.dim(), std::move(regions));
}

}  // namespace

SqrtApproxResult sqrt_d_approx(const ImpreciseInstance& instance) {
  const int n = instance.size();
  const int d = instance.dim();
  if (n == 1) {
    SqrtApproxResult out;
    if (instance.planar()) {
      out.selection.points = {to_point(instance.polygons()[0].vertices()[0])};
    } else {
      // any feasible point of the single region
      LinearProgram lp;
      lp.objective.assign(static_cast<std::size_t>(d), 0.0);
      lp.lower.assign(static_cast<std::size_t>(d), std::nullopt);
      lp.upper.assign(static_cast<std::size_t>(d), std::nullopt);
      for (const Halfspace& hs : instance.region_rows(0)) {
        lp.rows.push_back(hs.a);
        lp.rhs.push_back(hs.b);
      }
      const LpSolution sol = simplex_solve(lp);
      require(sol.status == LpStatus::Optimal, "single region must be feasible");
      out.selection.points = {Point(sol.x)};
    }
    return out;
  }

  const std::vector<double> shift = planar_shift(instance);
  const ImpreciseInstance work = translated(instance, shift);

  auto [lp, layout] = build_lp3(work);
  if (work.planar()) {
    // nonnegative after the shift; keeps the tableau free of split columns
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < d; ++k) lp.lower[static_cast<std::size_t>(layout.s_column(i, k))] = 0.0;
  }

  LpSolution first = simplex_solve(lp);
  if (first.status != LpStatus::Optimal)
    fail(ErrorCode::PreconditionViolation, "diameter relaxation did not solve to optimality");
  const double ell = first.x[static_cast<std::size_t>(layout.ell_column())];

  // second phase: pin ell, minimize the gap sum so every gap variable is tight
  LinearProgram second = lp;
  {
    std::vector<double> row(static_cast<std::size_t>(layout.num_columns()), 0.0);
    row[static_cast<std::size_t>(layout.ell_column())] = 1.0;
    second.rows.push_back(std::move(row));
    second.rhs.push_back(ell + 1e-9);
    std::fill(second.objective.begin(), second.objective.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < d; ++k)
          second.objective[static_cast<std::size_t>(layout.gap_column(i, j, k))] = 1.0;
  }
  LpSolution refined = simplex_solve(second);
  const LpSolution& sol = refined.status == LpStatus::Optimal ? refined : first;

  SqrtApproxResult out;
  out.ell = sol.x[static_cast<std::size_t>(layout.ell_column())];
  for (int i = 0; i < n; ++i) {
    std::vector<double> coords(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
      coords[static_cast<std::size_t>(k)] =
          sol.x[static_cast<std::size_t>(layout.s_column(i, k))] - shift[static_cast<std::size_t>(k)];
    out.selection.points.emplace_back(std::move(coords));
  }
  return out;
}

std::string dump_lp(const LinearProgram& lp) {
  std::string out;
  char buf[64];
  auto append_row = [&out, &buf](const std::vector<double>& row, double b) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12g", row[j]);
      out += buf;
      out += ' ';
    }
    std::snprintf(buf, sizeof buf, "%.12g", b);
    out += "<= ";
    out += buf;
    out += '\n';
  };
  for (int i = 0; i < lp.num_rows(); ++i)
    append_row(lp.rows[static_cast<std::size_t>(i)], lp.rhs[static_cast<std::size_t>(i)]);
  const int nv = lp.num_vars();
  for (int j = 0; j < nv; ++j) {
    std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
    if (!lp.lower.empty() && lp.lower[static_cast<std::size_t>(j)].has_value()) {
      row[static_cast<std::size_t>(j)] = -1.0;
      append_row(row, -*lp.lower[static_cast<std::size_t>(j)]);
    }
    if (!lp.upper.empty() && lp.upper[static_cast<std::size_t>(j)].has_value()) {
      row[static_cast<std::size_t>(j)] = 1.0;
      append_row(row, *lp.upper[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace mindiam
