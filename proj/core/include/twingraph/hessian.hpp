#pragma once

#include <optional>
#include <utility>

#include "twingraph/duality.hpp"
#include "twingraph/field.hpp"

namespace twingraph {

// Discrete residuals of the two divergence identities tying the
// lambda-weighted flux derivatives of a Riemannian graph to its mean
// curvature and bundle curvature:
//   [(lam^2(1+a^2)/w)_y - (lam^2 ab/w)_x]/lam^2
//       = lam (2 tau a/w - 2 H b) + (lam_y/lam)(1+w^2)/w
// and its x/y mirror.  Both fields live on cells away from the mask rim
// and decay like h^2 for smooth graphs.
std::pair<ScalarField, ScalarField> flux_identity_residual(
    const ScalarField& u, double spacelike_margin = 1e-8);

// Convex potential built from a flat minimal graph.  For kappa = tau = H = 0
// the flux identities say the forms ((1+a^2)/w, ab/w) and (ab/w, (1+b^2)/w)
// are closed; quadrature yields potentials g, h with g_y = h_x, and a second
// quadrature of (g, h) yields f with
//   f_xx = (1+a^2)/w,  f_xy = ab/w,  f_yy = (1+b^2)/w,
// hence det Hess f = 1.  Gauge: f and both its first derivatives vanish at
// the anchor.
struct HessianSolution {
  ScalarField source;
  ScalarField f;
  ScalarField g;  // f_x
  ScalarField h;  // f_y
  ScalarField det_residual;      // det Hess f - 1, interior cells
  double mixed_residual = 0.0;   // sup |D_y g - D_x h|, the closedness check
  bool convex = false;           // Hessian positive definite cell-wise
  std::pair<int, int> anchor{0, 0};
};

struct HessianOptions {
  double cmc_tol = 1e-3;  // minimality gate on the source graph
  double spacelike_margin = 1e-8;
  std::optional<std::pair<int, int>> anchor;
};

HessianSolution hessian_from_minimal(const ScalarField& u,
                                     const HessianOptions& opt = {});

}  // namespace twingraph
