#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "twingraph/space.hpp"

namespace twingraph {

// Scalar sample field over a DomainSpec.  Masked cells hold NaN.
struct ScalarField {
  DomainSpec domain;
  SpaceParams params;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(DomainSpec d, SpaceParams sp);

  double& at(int i, int j) { return values[domain.index(i, j)]; }
  double at(int i, int j) const { return values[domain.index(i, j)]; }
  bool inside(int i, int j) const { return domain.inside(i, j); }

  static ScalarField sample(const DomainSpec& d, const SpaceParams& sp,
                            const std::function<double(double, double)>& f);
};

// Generalized-gradient components in the orthonormal base frame
// e1 = dx/lambda, e2 = dy/lambda:
//   Riemannian:  alpha = u_x/lambda + tau y,  beta = u_y/lambda - tau x
//   Lorentzian:  alpha = v_x/lambda - tau y,  beta = v_y/lambda + tau x
// omega = sqrt(1 + eps (alpha^2 + beta^2)); Lorentzian fields must keep
// 1 - alpha^2 - beta^2 positive (spacelike graph).
struct FrameField {
  DomainSpec domain;
  SpaceParams params;
  std::vector<double> alpha, beta, omega;

  double a(int i, int j) const { return alpha[domain.index(i, j)]; }
  double b(int i, int j) const { return beta[domain.index(i, j)]; }
  double w(int i, int j) const { return omega[domain.index(i, j)]; }
};

// 2x2 symmetric form per cell: entries (e11, e12, e22).
struct FundamentalFormField {
  DomainSpec domain;
  SpaceParams params;
  bool lambda_scaled = true;
  std::vector<double> e11, e12, e22;

  double det(int i, int j) const {
    int k = domain.index(i, j);
    return e11[k] * e22[k] - e12[k] * e12[k];
  }
};

}  // namespace twingraph
