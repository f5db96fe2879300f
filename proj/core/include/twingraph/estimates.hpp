#pragma once

#include <string>
#include <utility>
#include <vector>

#include "twingraph/field.hpp"

namespace twingraph {

// Numeric verdict on one of the integral estimates.  `max_violation` collects
// the worst slack-adjusted defect, so pass holds exactly when it is <= 0.
struct EstimateReport {
  std::string bound;
  std::vector<std::pair<std::string, double>> witnesses;
  double max_violation = 0.0;
  bool pass = false;

  std::string to_json() const;
  // First witness with this exact key; throws DomainError when absent.
  double find(const std::string& key) const;
};

struct EstimateOptions {
  double cmc_tol = 1e-3;          // relative curvature-deviation gate
  double spacelike_margin = 1e-8;
  double burn_in = 1.0;           // radius where growth assertions engage
  int windows = 6;                // growing-window sample count
  double slope_floor = 1.0;       // angle probe: required d(integral)/d(log R)
  double flux_tol_factor = 10.0;  // |2 H Area - flux| <= factor * h
};

// Divergence-theorem check on concentric staircase disks: the interior sum of
// the discrete curvature divergence telescopes to the boundary flux of
// Gu/omega, the flux never exceeds the lambda-length of the staircase rim
// (Riemannian case), and 2 H Area stays within O(h) of the flux.
EstimateReport heinz_flux_check(const ScalarField& u,
                                const std::vector<double>& disks,
                                const EstimateOptions& opt = {});

// Gradient estimate for spacelike constant-curvature graphs over the flat
// base: A* = min (1 - |grad v|^2)(1 + r^2)^2 stays positive and is
// non-increasing under window growth.  Requires H > 0.
EstimateReport cheng_yau_check(const ScalarField& v,
                               const EstimateOptions& opt = {});

// Growth witnesses for minimal graphs over the flat Riemannian base with
// nonzero bundle curvature: B* = max |Gu|/(1+r^2) and
// C* = max |u|/(1+r^2)^(3/2) stabilize beyond the burn-in radius.
EstimateReport nil_growth_check(const ScalarField& u,
                                const EstimateOptions& opt = {});

// |integral of f nu over the graph - integral of f over the base|, both in
// the lambda metric.  The two quadratures agree identically by construction,
// so the residual only measures floating-point noise.
double coarea_identity(const ScalarField& u, const ScalarField& f,
                       double* graph_side = nullptr,
                       double* base_side = nullptr);

// Integral of the angle function over growing disks; divergence signature is
// a log-slope bounded away from zero.
EstimateReport angle_integrability_probe(const ScalarField& u,
                                         const EstimateOptions& opt = {});

}  // namespace twingraph
