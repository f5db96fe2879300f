#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "twingraph/field.hpp"

namespace twingraph {

// Prescribed-curvature Dirichlet problem on a masked grid.  Unknowns live on
// interior cells (full 3x3 neighborhood unmasked); every other unmasked cell
// is boundary and keeps the value of `boundary(x, y)`.
struct DirichletProblem {
  DomainSpec domain;
  SpaceParams params;
  double H = 0.0;
  std::function<double(double, double)> boundary;
};

struct SolveOptions {
  double tol = 1e-8;        // sup-norm target for |H(u) - H| on interior cells
  int max_outer = 200;      // coefficient-freezing sweeps
  int max_inner = 20000;    // conjugate-gradient iterations per sweep
  double inner_tol = 1e-12; // relative residual for the inner solve
  double damping = 1.0;     // under-relaxation of the outer update
  double spacelike_margin = 1e-8;
};

struct SolveReport {
  bool converged = false;
  int outer_iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  // Lorentzian: smallest 1 - alpha^2 - beta^2 seen on the stencil edges of
  // the final iterate.  Riemannian solves report +inf.
  double min_spacelike = std::numeric_limits<double>::infinity();
  std::vector<double> history;  // residual after each sweep
};

// Solves by freezing the gradient-dependent coefficient omega, which leaves a
// symmetric positive definite five-point system handled by conjugate
// gradients, then re-freezing until the discrete curvature matches H.
// Throws NumericError(NoConvergence) or NumericError(NotSpacelike) on
// failure; when `report` is given it is filled in either way.
ScalarField solve_dirichlet(const DirichletProblem& prob,
                            const SolveOptions& opt = {},
                            SolveReport* report = nullptr);

}  // namespace twingraph
