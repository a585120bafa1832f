#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "parabarrier/barriers.hpp"
#include "parabarrier/gridfield.hpp"
#include "parabarrier/problem.hpp"
#include "parabarrier/schemes.hpp"

namespace parabarrier {

struct StepOptions {
  double safety = 0.5;          // fraction of the measured stability limit
  double dt_cap = 0.0;          // 0 means no explicit cap
  double f_floor = 1e-10;       // degenerate-timestep guard on f(u)
  std::function<double(double)> aug_coef;  // (φ''/φ')(v) for transformed solves
  std::function<double(double)> f_override;  // replaces ps.f (transformed solves)
};

/// Level 0 of a new field: h(x, 0) everywhere.
GridField make_initial_field(const ProblemSpec& ps, const GridGeometry& geom);

/// One explicit Euler level: u += dt/f(u) (H_h + χ|∇u|^Γ) at interior nodes,
/// boundary refreshed from h; dt capped by the measured local stability
/// bound times safety.
void step(const ProblemSpec& ps, GridField& field, SchemeKey scheme,
          const StepOptions& opt = {});

/// Repeated step up to the target time (the last step lands exactly on it).
GridField solve(const ProblemSpec& ps, GridField u0, SchemeKey scheme, double until,
                const StepOptions& opt = {});

/// Two problems integrated with a shared dt sequence so their lattices are
/// level-by-level comparable.
std::pair<GridField, GridField> solve_pair(const ProblemSpec& a, const ProblemSpec& b,
                                           const GridGeometry& geom, SchemeKey scheme,
                                           double until, const StepOptions& opt = {});

struct GridCheckReport {
  std::string name;
  bool passed = true;
  double tol = 0.0;
  double worst = 0.0;  // most violating signed gap
  int level = -1, i = -1, j = -1;
};

double grid_tolerance(const GridField& f, double c1 = 5.0);  // c1 (Δx + dt)

/// sub ≤ sup + tol_grid at every node and level; with a φ supplied, also the
/// general form u ≤ φ(φ⁻¹(v) + sup_PT (φ⁻¹u - φ⁻¹v)⁺).
GridCheckReport check_comparison(const GridField& sub, const GridField& sup,
                                 double c1 = 5.0, const PhiSolution* phi = nullptr);

/// u/v ≤ max(sup_PT u/v, 1) within tol_grid (quotient comparison for the
/// f(u) = u^{k-1} family).
GridCheckReport check_quotient(const GridField& u, const GridField& v, double c1 = 5.0);

/// Extremes over all nodes/levels stay within the parabolic-boundary extremes.
GridCheckReport check_max_principle(const GridField& f, double c1 = 5.0);

struct SandwichReport {
  GridCheckReport check;
  std::vector<double> anchor_gaps;  // per-barrier |field - barrier| at its anchor
};

/// max over bumps ≤ field + tol ≤ min over indents + 2 tol at every node.
SandwichReport check_sandwich(const ProblemSpec& ps, const GridField& field,
                              const std::vector<BarrierSpec>& bumps,
                              const std::vector<BarrierSpec>& indents, double c1 = 5.0);

}  // namespace parabarrier
