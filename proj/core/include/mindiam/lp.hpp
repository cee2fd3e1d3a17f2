#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mindiam/geometry.hpp"
#include "mindiam/mindcs.hpp"

namespace mindiam {

/// One inequality dot(a, x) <= b.
struct Halfspace {
  std::vector<double> a;
  double b = 0.0;
};

/// A bounded convex region in d >= 3 dimensions given by its inequalities.
struct HalfspaceRegion {
  int dim = 0;
  std::vector<Halfspace> rows;
};

/// minimize dot(c, x) subject to A x <= b and per-variable bounds.
/// Unset bounds mean free below / unbounded above.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<std::optional<double>> lower;
  std::vector<std::optional<double>> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double objective_value = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 100000;
  double feasibility_tol = 1e-7;
  double pivot_tol = 1e-9;
};

/// Two-phase dense simplex with Bland's anti-cycling rule.
LpSolution simplex_solve(const LinearProgram& lp, const SimplexOptions& options = {});

/// Inequality rows describing membership in a planar convex region: one
/// half-plane per edge; a point yields 2d pinning rows and a segment two
/// carrier-line rows plus two extent rows.
std::vector<Halfspace> region_constraints(const ConvexPolygon& region);

/// Variable layout of the rectilinear-diameter relaxation: point coordinates
/// s[i][k], per-pair per-axis gap variables g[i][j][k], and the diameter
/// bound ell in the last column.
struct Lp3Layout {
  int num_regions = 0;
  int dim = 0;

  int s_column(int i, int k) const { return i * dim + k; }
  int gap_column(int i, int j, int k) const;  // requires i < j
  int ell_column() const { return num_regions * dim + num_pairs() * dim; }
  int num_pairs() const { return num_regions * (num_regions - 1) / 2; }
  int num_columns() const { return ell_column() + 1; }
};

class ImpreciseInstance;  // defined in imprecise.hpp

/// Builds the relaxation over an imprecise instance: per-pair rows
/// sum_k g[i][j][k] <= ell, the region membership rows, and the two
/// absolute-value rows per pair and axis. Objective: minimize ell.
std::pair<LinearProgram, Lp3Layout> build_lp3(const ImpreciseInstance& instance);

struct SqrtApproxResult {
  double ell = 0.0;
  Selection selection;
};

/// Solves the relaxation lexicographically (first ell, then the gap sum) and
/// reads the selection off the coordinate variables. ell is within a factor
/// sqrt(d) of the true minimum diameter.
SqrtApproxResult sqrt_d_approx(const ImpreciseInstance& instance);

/// Plain-text dump, one row per line: coefficients, "<=", rhs. Variable
/// bounds are emitted as explicit rows.
std::string dump_lp(const LinearProgram& lp);

}  // namespace mindiam
