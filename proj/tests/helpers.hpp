#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "twingraph/field.hpp"
#include "twingraph/field_ops.hpp"

namespace twingraph::testing {

using Fn2 = std::function<double(double, double)>;

// sup |u - ref| over unmasked cells.
inline double sup_error(const ScalarField& u, const Fn2& ref) {
  double worst = 0.0;
  const DomainSpec& d = u.domain;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      worst = std::max(worst, std::fabs(u.at(i, j) - ref(d.x(i), d.y(j))));
    }
  return worst;
}

// sup |u - ref - c| over unmasked cells, c chosen as the mean offset.
inline double sup_gauge_error(const ScalarField& u, const Fn2& ref) {
  const DomainSpec& d = u.domain;
  double sum = 0.0;
  int n = 0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      sum += u.at(i, j) - ref(d.x(i), d.y(j));
      ++n;
    }
  if (n == 0) return 0.0;
  double c = sum / n;
  double worst = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      worst =
          std::max(worst, std::fabs(u.at(i, j) - ref(d.x(i), d.y(j)) - c));
    }
  return worst;
}

// sup |u - c| over interior cells of a field defined there (mean curvature
// output), against a constant.
inline double sup_interior_error(const ScalarField& u, double c) {
  double worst = 0.0;
  const DomainSpec& d = u.domain;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      worst = std::max(worst, std::fabs(u.at(i, j) - c));
    }
  return worst;
}

inline double sup_abs(const ScalarField& u) { return sup_interior_error(u, 0.0); }

}  // namespace twingraph::testing
