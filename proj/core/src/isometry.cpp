#include "twingraph/isometry.hpp"

#include <cmath>
#include <limits>

#include "twingraph/errors.hpp"

namespace twingraph {

namespace {

bool same_space(const SpaceParams& a, const SpaceParams& b) {
  return a.kappa == b.kappa && a.bundle == b.bundle && a.causal == b.causal;
}

// Cubic Lagrange weights on nodes at offsets -1, 0, 1, 2 for s in [0, 1).
void cubic_weights(double s, double w[4]) {
  w[0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
  w[1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  w[2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
  w[3] = (s + 1.0) * s * (s - 1.0) / 6.0;
}

}  // namespace

double isometry_defect(const LiftedIsometry& iso,
                       const std::array<double, 3>& point,
                       const std::array<double, 3>& vec) {
  double ct = std::cos(iso.theta), st = std::sin(iso.theta);
  std::array<double, 3> q{ct * point[0] - st * point[1],
                          st * point[0] + ct * point[1], point[2] + iso.c};
  std::array<double, 3> w{ct * vec[0] - st * vec[1],
                          st * vec[0] + ct * vec[1], vec[2]};
  return std::fabs(metric_eval(iso.params, q, w) -
                   metric_eval(iso.params, point, vec));
}

ScalarField act_on_graph(const LiftedIsometry& iso, const ScalarField& u) {
  if (!same_space(iso.params, u.params))
    throw DomainError("isometry acts on a different space than the graph");
  const DomainSpec& d = u.domain;

  if (iso.theta == 0.0) {
    ScalarField out = u;
    for (int j = 0; j < d.ny; ++j)
      for (int i = 0; i < d.nx; ++i)
        if (d.inside(i, j)) out.at(i, j) += iso.c;
    return out;
  }

  double ct = std::cos(iso.theta), st = std::sin(iso.theta);
  double xlo = d.x0 - 0.5 * d.h, xhi = d.x(d.nx - 1) + 0.5 * d.h;
  double ylo = d.y0 - 0.5 * d.h, yhi = d.y(d.ny - 1) + 0.5 * d.h;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      double qx = ct * d.x(i) - st * d.y(j);
      double qy = st * d.x(i) + ct * d.y(j);
      if (qx < xlo || qx > xhi || qy < ylo || qy > yhi)
        throw DomainError("rotated mask exits the grid");
    }

  ScalarField out(d, u.params);
  out.domain.mask.assign(out.domain.mask.size(), 0);
  bool any = false;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      // preimage of this cell center under the rotation
      double px = ct * d.x(i) + st * d.y(j);
      double py = -st * d.x(i) + ct * d.y(j);
      double tx = (px - d.x0) / d.h, ty = (py - d.y0) / d.h;
      int i1 = static_cast<int>(std::floor(tx));
      int j1 = static_cast<int>(std::floor(ty));
      double sx = tx - i1, sy = ty - j1;
      bool ok = true;
      for (int b = -1; b <= 2 && ok; ++b)
        for (int a = -1; a <= 2 && ok; ++a)
          if (!d.inside(i1 + a, j1 + b)) ok = false;
      if (!ok) continue;
      double wx[4], wy[4];
      cubic_weights(sx, wx);
      cubic_weights(sy, wy);
      double v = 0.0;
      for (int b = -1; b <= 2; ++b)
        for (int a = -1; a <= 2; ++a)
          v += wx[a + 1] * wy[b + 1] * u.at(i1 + a, j1 + b);
      out.domain.mask[d.index(i, j)] = 1;
      out.at(i, j) = v + iso.c;
      any = true;
    }
  if (!any) throw DomainError("rotated graph does not cover any cell");
  return out;
}

LiftedIsometry matching_isometry(const LiftedIsometry& iso,
                                 const SpaceParams& target) {
  LiftedIsometry out = iso;
  out.params = target;
  return out;
}

double equivariance_residual(const DualPair& pair, const LiftedIsometry& iso,
                             const DualizeOptions& opts) {
  if (!same_space(iso.params, pair.source.params))
    throw DomainError("isometry acts on a different space than the pair");
  ScalarField acted = act_on_graph(iso, pair.source);
  DualizeOptions o = opts;
  if (!o.prescribed_H) o.prescribed_H = pair.source_H;
  DualPair left = dualize(acted, o);
  ScalarField right =
      act_on_graph(matching_isometry(iso, pair.target.params), pair.target);
  return gauge_distance(left.target, right);
}

}  // namespace twingraph
