#pragma once

#include <string>
#include <vector>

#include "twingraph/field.hpp"

namespace twingraph {

// Closed-form graph fixtures with their expected constant mean curvature
// (upward orientation).
struct CatalogEntry {
  ScalarField field;
  double expected_H = 0.0;
};

// Named families:
//   zero_section             u = 0 in E(0,H) (minimal), expected 0
//   hemisphere               u = -sqrt(H^-2 - r^2) in E(0,0), expected H
//   paraboloid               v = sqrt(H^-2 + r^2) in L(0,0), expected H
//   hyperbolic_cylinder      v = sqrt((2H)^-2 + y^2) in L(0,0), expected H
//   semitrough               hyperbolic-rotation CMC graph in L(0,0)
//   nil_hxy                  u = H x y in E(0,H) (minimal), expected 0
//   scherk                   u = log(cos y / cos x) in E(0,0), expected 0
CatalogEntry make_example(const std::string& name, double H,
                          const DomainSpec& domain);

// Zero section of an arbitrary model space (minimal; Lorentzian spaces must
// keep the section spacelike over the window).
CatalogEntry make_zero_section(const SpaceParams& params,
                               const DomainSpec& domain);

const std::vector<std::string>& catalog_names();

// Inverse of X = (x - coth(x)/2)/H on x > 0 (used by the semitrough
// profile; exposed for testing).
double semitrough_profile_x(double HX);

}  // namespace twingraph
