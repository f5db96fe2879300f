#pragma once

#include "twingraph/field.hpp"

namespace twingraph {

// Chart derivatives (u_x, u_y) by second-order differences: central where
// both neighbors are unmasked, one-sided three-point at the mask boundary.
// Cells with fewer than three aligned unmasked cells fall back to first
// order (two-point); isolated cells get zero.
void chart_gradient(const ScalarField& u, std::vector<double>& ux,
                    std::vector<double>& uy);

// Generalized gradient of a graph field.  Throws NotSpacelike when a
// Lorentzian frame leaves the margin 1 - alpha^2 - beta^2 >= spacelike_margin.
FrameField generalized_gradient(const ScalarField& u,
                                double spacelike_margin = 1e-8);

// Angle function nu = 1/omega (in (0,1] Riemannian, [1,inf) Lorentzian).
ScalarField angle_function(const FrameField& f);

// Mean curvature by the conservative flux form
//   H = (1/2) lambda^-2 [ (lambda alpha/omega)_x + (lambda beta/omega)_y ]
// with fluxes evaluated at half-grid points.  Defined on cells whose full
// 3x3 neighborhood is unmasked; other cells are masked (NaN) in the result.
ScalarField mean_curvature(const ScalarField& u,
                           double spacelike_margin = 1e-8);

// Conservative half-edge fluxes underlying mean_curvature: the lambda
// weighted components of G u / omega at ((i+1/2), j) resp. (i, (j+1/2)).
// Callers must ensure the 2x3 / 3x2 stencil around the edge is unmasked.
double half_flux_x(const ScalarField& u, int i, int j, double margin = 1e-8);
double half_flux_y(const ScalarField& u, int i, int j, double margin = 1e-8);

// True when the full 3x3 neighborhood of (i,j) is unmasked.
bool interior_cell(const DomainSpec& d, int i, int j);

// First fundamental form of the graph in the frame of the tangent basis,
// scaled by lambda^2:
//   Riemannian: lambda^2 [[1+a^2, ab], [ab, 1+b^2]]
//   Lorentzian: lambda^2 [[1-a^2, -ab], [-ab, 1-b^2]]
FundamentalFormField first_fundamental_form(const ScalarField& u);
FundamentalFormField form_from_frame(const FrameField& f,
                                     bool lambda_scaled = true);

// | loop flux of J Z + 2 tau area | over the coordinate rectangle
// [xa,xb] x [ya,yb], quadrature step ~h.  Z is the vertical-Killing shadow
// field of the space; div(J Z) = -2 tau exactly, so the residual is O(h^2).
double bundle_flux_residual(const SpaceParams& sp, double xa, double xb,
                            double ya, double yb, double h);

// Mean curvature constancy check with Richardson control: deviation of the
// discrete curvature field from its mean at step h and at step 2h (stride-2
// subsampling), and the extrapolated deviation ~ (4 dev_h - dev_2h)/3 which
// cancels the leading discretization term.
struct CmcCheck {
  double mean = 0.0;
  double dev_h = 0.0;
  double dev_2h = 0.0;
  double extrapolated = 0.0;
  double min = 0.0;
  double max = 0.0;
};
CmcCheck cmc_deviation(const ScalarField& u, double spacelike_margin = 1e-8);

}  // namespace twingraph
