#pragma once

#include <array>

#include "twingraph/duality.hpp"
#include "twingraph/field.hpp"

namespace twingraph {

// Rotation by theta about the central fiber composed with a vertical shift:
// (x, y, z) -> (R_theta(x, y), z + c).  These are the lifts shared by every
// model space here, since the metrics are rotationally invariant.
struct LiftedIsometry {
  double theta = 0.0;
  double c = 0.0;
  SpaceParams params;
};

// |squared length of the pushforward - squared length| for one tangent
// sample; zero up to roundoff because the action is an isometry.
double isometry_defect(const LiftedIsometry& iso,
                       const std::array<double, 3>& point,
                       const std::array<double, 3>& vec);

// Image graph: ubar(R_theta p) = u(p) + c, resampled onto the same grid
// layout.  theta = 0 copies values exactly; otherwise cells keep a value
// only where the 4x4 interpolation stencil of the preimage lies inside the
// mask.  Throws DomainError when the rotated mask exits the grid.
ScalarField act_on_graph(const LiftedIsometry& iso, const ScalarField& u);

// The twin-side isometry: same rotation and the same vertical shift (the
// origin's image pins the shift), acting on the target space.
LiftedIsometry matching_isometry(const LiftedIsometry& iso,
                                 const SpaceParams& target);

// sup |dualize(act(iso, source)) - act(matching iso, target)| modulo an
// additive constant, over the cells both sides cover.
double equivariance_residual(const DualPair& pair, const LiftedIsometry& iso,
                             const DualizeOptions& opts = {});

}  // namespace twingraph
