#include "twingraph/hessian.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "twingraph/errors.hpp"
#include "twingraph/field_ops.hpp"

namespace twingraph {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double dx_central(const std::vector<double>& v, const DomainSpec& d, int i,
                  int j) {
  return (v[d.index(i + 1, j)] - v[d.index(i - 1, j)]) / (2.0 * d.h);
}

double dy_central(const std::vector<double>& v, const DomainSpec& d, int i,
                  int j) {
  return (v[d.index(i, j + 1)] - v[d.index(i, j - 1)]) / (2.0 * d.h);
}

// Stencils built from already-differentiated data must sit on cells whose
// 3x3 neighborhood was itself computed with central differences: cells next
// to the mask carry one-sided O(h^2) errors with a different constant, and
// differentiating across that kink leaves an O(h) or O(1) artifact.
bool clean_cell(const DomainSpec& d, int i, int j) {
  for (int dj = -1; dj <= 1; ++dj)
    for (int di = -1; di <= 1; ++di)
      if (!interior_cell(d, i + di, j + dj)) return false;
  return true;
}

}  // namespace

std::pair<ScalarField, ScalarField> flux_identity_residual(
    const ScalarField& u, double spacelike_margin) {
  if (!u.params.riemannian())
    throw DomainError("flux identities apply to the Riemannian spaces");
  const DomainSpec& d = u.domain;
  FrameField fr = generalized_gradient(u, spacelike_margin);
  ScalarField H = mean_curvature(u, spacelike_margin);

  std::vector<double> P(fr.alpha.size(), kNaN), Q(P), S(P);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      double lam = conformal_factor(u.params, d.x(i), d.y(j));
      double l2 = lam * lam;
      P[k] = l2 * (1.0 + fr.alpha[k] * fr.alpha[k]) / fr.omega[k];
      Q[k] = l2 * fr.alpha[k] * fr.beta[k] / fr.omega[k];
      S[k] = l2 * (1.0 + fr.beta[k] * fr.beta[k]) / fr.omega[k];
    }

  ScalarField r1(d, u.params), r2(d, u.params);
  r1.domain.mask.assign(r1.domain.mask.size(), 0);
  r2.domain.mask = r1.domain.mask;
  double tau = u.params.bundle, kap = u.params.kappa;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!clean_cell(d, i, j)) continue;
      int k = d.index(i, j);
      double x = d.x(i), y = d.y(j);
      double lam = conformal_factor(u.params, x, y);
      double l2 = lam * lam;
      double a = fr.alpha[k], b = fr.beta[k], w = fr.omega[k];
      double dlx = -0.5 * kap * x * lam;  // lam_x / lam
      double dly = -0.5 * kap * y * lam;
      // The curvature group carries a factor lam: the divergence that
      // produces H contributes 2*H*lam per unit of coordinate derivative,
      // and the tau term scales the same way.
      double lhs1 = (dy_central(P, d, i, j) - dx_central(Q, d, i, j)) / l2;
      double rhs1 = lam * (2.0 * tau * a / w - 2.0 * H.at(i, j) * b) +
                    dly * (1.0 + w * w) / w;
      double lhs2 = (dx_central(S, d, i, j) - dy_central(Q, d, i, j)) / l2;
      double rhs2 = lam * (-2.0 * tau * b / w - 2.0 * H.at(i, j) * a) +
                    dlx * (1.0 + w * w) / w;
      r1.domain.mask[k] = 1;
      r2.domain.mask[k] = 1;
      r1.at(i, j) = lhs1 - rhs1;
      r2.at(i, j) = lhs2 - rhs2;
    }
  return {r1, r2};
}

HessianSolution hessian_from_minimal(const ScalarField& u,
                                     const HessianOptions& opt) {
  if (!u.params.riemannian() || u.params.kappa != 0.0 ||
      u.params.bundle != 0.0)
    throw DomainError("the construction needs a graph over flat space with "
                      "no bundle curvature");
  const DomainSpec& d = u.domain;
  if (!d.connected()) throw DomainError("mask is not connected");
  if (!d.simply_connected())
    throw DomainError(
        "mask is not simply connected: the potentials are path dependent");
  CmcCheck cmc = cmc_deviation(u, opt.spacelike_margin);
  if (std::fabs(cmc.mean) > opt.cmc_tol || cmc.extrapolated > opt.cmc_tol) {
    std::ostringstream msg;
    msg << "graph is not minimal: mean curvature " << cmc.mean
        << ", deviation " << cmc.extrapolated;
    throw NumericError(NumericFailure::NotConstantCurvature, msg.str());
  }

  FrameField fr = generalized_gradient(u, opt.spacelike_margin);
  std::vector<double> P(fr.alpha.size(), kNaN), Q(P), S(P);
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      int k = d.index(i, j);
      P[k] = (1.0 + fr.alpha[k] * fr.alpha[k]) / fr.omega[k];
      Q[k] = fr.alpha[k] * fr.beta[k] / fr.omega[k];
      S[k] = (1.0 + fr.beta[k] * fr.beta[k]) / fr.omega[k];
    }

  HessianSolution sol;
  sol.anchor = opt.anchor.value_or(default_anchor(d));
  sol.g = integrate_form(d, u.params, P, Q, sol.anchor);
  sol.h = integrate_form(d, u.params, Q, S, sol.anchor);

  sol.mixed_residual = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!clean_cell(d, i, j)) continue;
      double gy = dy_central(sol.g.values, d, i, j);
      double hx = dx_central(sol.h.values, d, i, j);
      sol.mixed_residual = std::max(sol.mixed_residual, std::fabs(gy - hx));
    }

  sol.f = integrate_form(d, u.params, sol.g.values, sol.h.values, sol.anchor);

  sol.det_residual = ScalarField(d, u.params);
  sol.det_residual.domain.mask.assign(sol.det_residual.domain.mask.size(), 0);
  sol.convex = true;
  double h2 = d.h * d.h;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!clean_cell(d, i, j)) continue;
      const std::vector<double>& f = sol.f.values;
      double fxx =
          (f[d.index(i + 1, j)] - 2.0 * f[d.index(i, j)] + f[d.index(i - 1, j)]) /
          h2;
      double fyy =
          (f[d.index(i, j + 1)] - 2.0 * f[d.index(i, j)] + f[d.index(i, j - 1)]) /
          h2;
      double fxy = (f[d.index(i + 1, j + 1)] - f[d.index(i + 1, j - 1)] -
                    f[d.index(i - 1, j + 1)] + f[d.index(i - 1, j - 1)]) /
                   (4.0 * h2);
      double det = fxx * fyy - fxy * fxy;
      sol.det_residual.domain.mask[d.index(i, j)] = 1;
      sol.det_residual.at(i, j) = det - 1.0;
      if (!(fxx > 0.0 && det > 0.0)) sol.convex = false;
    }
  sol.source = u;
  return sol;
}

}  // namespace twingraph
