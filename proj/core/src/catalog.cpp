#include "twingraph/catalog.hpp"

#include <cmath>

#include "twingraph/errors.hpp"

namespace twingraph {

namespace {

double max_mask_radius(const DomainSpec& d) {
  double r2 = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i)
      if (d.inside(i, j)) {
        double x = d.x(i), y = d.y(j);
        r2 = std::max(r2, x * x + y * y);
      }
  return std::sqrt(r2);
}

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

double semitrough_profile_x(double t) {
  // solve x - coth(x)/2 = t, monotone increasing on x > 0
  double lo = 1e-9;
  double hi = std::max(2.0, t + 1.0);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid - 0.5 * coth(mid) < t)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-16 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

CatalogEntry make_zero_section(const SpaceParams& params,
                               const DomainSpec& domain) {
  domain.validate_chart(params);
  if (params.causal == Causal::Lorentzian) {
    double rmax = max_mask_radius(domain);
    if (std::fabs(params.bundle) * rmax >= 1.0)
      throw DomainError(
          "zero section is not spacelike over the window: |tau| r >= 1");
  }
  CatalogEntry e;
  e.field = ScalarField::sample(domain, params,
                                [](double, double) { return 0.0; });
  e.expected_H = 0.0;
  return e;
}

CatalogEntry make_example(const std::string& name, double H,
                          const DomainSpec& domain) {
  CatalogEntry e;
  if (name == "zero_section") {
    return make_zero_section({0.0, H, Causal::Riemannian}, domain);
  }
  if (name == "hemisphere") {
    if (H <= 0.0) throw DomainError("hemisphere requires H > 0");
    double R = 1.0 / H;
    if (max_mask_radius(domain) >= R - 1e-12)
      throw DomainError("window exceeds the hemisphere validity disk r < 1/H");
    SpaceParams sp{0.0, 0.0, Causal::Riemannian};
    e.field = ScalarField::sample(domain, sp, [R](double x, double y) {
      return -std::sqrt(R * R - x * x - y * y);
    });
    e.expected_H = H;
    return e;
  }
  if (name == "paraboloid") {
    if (H <= 0.0) throw DomainError("paraboloid requires H > 0");
    double c2 = 1.0 / (H * H);
    SpaceParams sp{0.0, 0.0, Causal::Lorentzian};
    e.field = ScalarField::sample(domain, sp, [c2](double x, double y) {
      return std::sqrt(c2 + x * x + y * y);
    });
    e.expected_H = H;
    return e;
  }
  if (name == "hyperbolic_cylinder") {
    if (H <= 0.0) throw DomainError("hyperbolic_cylinder requires H > 0");
    double c2 = 1.0 / (4.0 * H * H);
    SpaceParams sp{0.0, 0.0, Causal::Lorentzian};
    e.field = ScalarField::sample(domain, sp, [c2](double, double y) {
      return std::sqrt(c2 + y * y);
    });
    e.expected_H = H;
    return e;
  }
  if (name == "semitrough") {
    if (H <= 0.0) throw DomainError("semitrough requires H > 0");
    SpaceParams sp{0.0, 0.0, Causal::Lorentzian};
    e.field = ScalarField::sample(domain, sp, [H](double X, double Y) {
      double x = semitrough_profile_x(H * X);
      double rho = 0.5 * coth(x) / H;
      return std::sqrt(rho * rho + Y * Y);
    });
    e.expected_H = H;
    return e;
  }
  if (name == "nil_hxy") {
    SpaceParams sp{0.0, H, Causal::Riemannian};
    e.field = ScalarField::sample(
        domain, sp, [H](double x, double y) { return H * x * y; });
    e.expected_H = 0.0;
    return e;
  }
  if (name == "scherk") {
    double half_pi = 1.5707963267948966;
    for (int j = 0; j < domain.ny; ++j)
      for (int i = 0; i < domain.nx; ++i)
        if (domain.inside(i, j) &&
            (std::fabs(domain.x(i)) >= half_pi - 1e-9 ||
             std::fabs(domain.y(j)) >= half_pi - 1e-9))
          throw DomainError("scherk window must stay inside |x|,|y| < pi/2");
    SpaceParams sp{0.0, 0.0, Causal::Riemannian};
    e.field = ScalarField::sample(domain, sp, [](double x, double y) {
      return std::log(std::cos(y) / std::cos(x));
    });
    e.expected_H = 0.0;
    return e;
  }
  throw DomainError("unknown example name: " + name);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "zero_section", "hemisphere",  "paraboloid", "hyperbolic_cylinder",
      "semitrough",   "nil_hxy",     "scherk"};
  return names;
}

}  // namespace twingraph
