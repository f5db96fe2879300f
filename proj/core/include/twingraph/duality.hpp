#pragma once

#include <optional>
#include <utility>

#include "twingraph/field_ops.hpp"

namespace twingraph {

enum class TwinDirection { EtoL, LtoE };

// Frame-level twin relations (normalization omega_tilde = 1/omega is exact):
//   EtoL: alpha~ = -beta/omega,  beta~ = alpha/omega
//   LtoE: alpha  = beta~/omega~, beta  = -alpha~/omega~
// The returned frame carries the flipped causal type and kappa; its bundle
// parameter is set to target_bundle (the source mean curvature), which only
// matters when reconstructing the chart 1-form.
FrameField twin_gradient(const FrameField& f, TwinDirection dir,
                         double target_bundle = 0.0);

// Chart 1-form of a graph with the given frame in the given space:
//   Riemannian: u_x = lambda (alpha - tau y), u_y = lambda (beta + tau x)
//   Lorentzian: v_x = lambda (alpha + tau y), v_y = lambda (beta - tau x)
void chart_one_form(const FrameField& f, const SpaceParams& target,
                    std::vector<double>& fx, std::vector<double>& fy);

// Max cell-wise curl of the reconstructed 1-form (central differences).
// For an exactly CMC source this is the discretization residual O(h^2);
// it equals 2 lambda^2 (H(x,y) - H_target) up to sign in the continuum.
double integrability_residual(const FrameField& twinned,
                              const SpaceParams& target);

// Unmasked cell closest to the unmasked centroid; the anchor used when the
// options leave it unset.
std::pair<int, int> default_anchor(const DomainSpec& d);

// Path integration of a discrete 1-form from the anchor cell, gauge
// value(anchor) = 0.  Rectangular reach: average of the two monotone
// staircase orders; cells without a fully unmasked staircase are filled
// along a breadth-first spanning tree seeded by the staircase values.
ScalarField integrate_form(const DomainSpec& d, const SpaceParams& params,
                           const std::vector<double>& fx,
                           const std::vector<double>& fy,
                           std::pair<int, int> anchor);

struct DualizeOptions {
  double cmc_tol = 1e-6;                  // relative, Richardson controlled
  double spacelike_margin = 1e-8;
  std::optional<double> prescribed_H;     // override measured curvature
  std::optional<std::pair<int, int>> anchor;
};

struct DualResiduals {
  double integrability = 0.0;
  double twin = 0.0;           // finite-difference frame of target vs twin
  double omega_product = 0.0;  // sup |omega omega~ - 1|, algebraic
};

struct DualPair {
  ScalarField source;
  ScalarField target;
  std::pair<int, int> anchor{0, 0};
  double source_H = 0.0;  // curvature adopted as the target bundle
  DualResiduals residuals;
};

// Twin correspondence at desk scale: checks the source is CMC
// (Richardson-extrapolated relative deviation <= cmc_tol), twins the frame,
// integrates the 1-form.  Target: CMC tau graph in the sibling space with
// bundle = source curvature and flipped causal type.
DualPair dualize(const ScalarField& u, const DualizeOptions& opts = {});

// Dualizes the target back (prescribing the original bundle as curvature)
// and returns sup |recovered - source| modulo an additive constant.
double roundtrip_error(const DualPair& pair, const DualizeOptions& opts = {});

// sup |a - b - c*| over common unmasked cells, c* the mean offset.
double gauge_distance(const ScalarField& a, const ScalarField& b);

}  // namespace twingraph
