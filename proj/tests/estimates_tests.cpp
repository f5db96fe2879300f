#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "twingraph/catalog.hpp"
#include "twingraph/errors.hpp"
#include "twingraph/estimates.hpp"

using namespace twingraph;

TEST_CASE("flux balance on the hemisphere") {
  // For u = -sqrt(1 - r^2) the scaled gradient Gu/omega is the radial field
  // (x, y), so the disk flux is 2 pi R^2 = 2 H Area, and the rim length of
  // the staircase (~8R) stays above it on every subunit disk.
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.025));
  EstimateReport rep = heinz_flux_check(e.field, {0.25, 0.5});
  CHECK(rep.bound == "heinz_flux");
  CHECK(rep.pass);
  CHECK(rep.max_violation <= 0.0);
  CHECK(rep.find("H") == doctest::Approx(1.0).epsilon(1e-3));
  for (double R : {0.25, 0.5}) {
    std::string suffix = R == 0.25 ? "[R=0.25]" : "[R=0.5]";
    CHECK(rep.find("telescope" + suffix) <= 1e-12);
    double flux = rep.find("flux" + suffix);
    CHECK(flux == doctest::Approx(2.0 * 3.14159265358979 * R * R).epsilon(0.1));
    CHECK(std::fabs(flux) <= rep.find("length" + suffix));
    CHECK(std::fabs(rep.find("two_H_area" + suffix) - flux) <= 0.25);
  }
}

TEST_CASE("flux balance on a minimal graph") {
  auto e = make_example("nil_hxy", 1.0, DomainSpec::disk(0.9, 0.025));
  EstimateReport rep = heinz_flux_check(e.field, {0.5});
  CHECK(rep.pass);
  CHECK(std::fabs(rep.find("two_H_area[R=0.5]")) <= 1e-10);
  CHECK(std::fabs(rep.find("flux[R=0.5]")) <= 1e-9);
}

TEST_CASE("flux check rejects disks leaving the mask") {
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.025));
  CHECK_THROWS_AS(heinz_flux_check(e.field, {0.9}), DomainError);
  CHECK_THROWS_AS(heinz_flux_check(e.field, {}), DomainError);
  CHECK_THROWS_AS(heinz_flux_check(e.field, {-0.1}), DomainError);
}

TEST_CASE("gradient estimate on the spacelike paraboloid family") {
  // (1 - |grad v|^2)(1 + r^2)^2 = 1 + r^2 for v = sqrt(1 + r^2): the window
  // minimum sits at the origin and equals one.
  auto e = make_example("paraboloid", 1.0, DomainSpec::disk(0.8, 0.02));
  EstimateReport rep = cheng_yau_check(e.field);
  CHECK(rep.bound == "cheng_yau_gradient");
  CHECK(rep.pass);
  double a = rep.find("A*");
  CHECK(a >= 0.9);
  CHECK(a <= 1.01);
  CHECK(rep.find("H") == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.find("cy_ratio_max") >= 0.0);
}

TEST_CASE("gradient estimate gates its hypotheses") {
  auto riem = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.05));
  CHECK_THROWS_AS(cheng_yau_check(riem.field), DomainError);

  // Minimal spacelike graphs fail the H > 0 requirement.
  auto flat = make_zero_section({0.0, 0.0, Causal::Lorentzian},
                                DomainSpec::disk(0.8, 0.05));
  CHECK_THROWS_AS(cheng_yau_check(flat.field), DomainError);
}

TEST_CASE("growth witnesses of minimal sections") {
  // |Gu| = r for the zero section of E(0,1), so B* = max r/(1+r^2) = 1/2
  // once the window reaches r = 1, and C* vanishes with u.
  auto z = make_zero_section({0.0, 1.0, Causal::Riemannian},
                             DomainSpec::disk(1.3, 0.05));
  EstimateReport rep = nil_growth_check(z.field);
  CHECK(rep.bound == "nil_growth");
  CHECK(rep.pass);
  CHECK(rep.find("B*") == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(rep.find("C*") == 0.0);
}

TEST_CASE("growth witnesses of the bilinear minimal graph") {
  // u = xy in E(0,1): Gu = (2y, 0), so B* = max 2|y|/(1+r^2) = 1 at (0,1)
  // and C* = max |xy|/(1+r^2)^(3/2) = 3^(-3/2) on the diagonal r^2 = 2.
  auto e = make_example("nil_hxy", 1.0, DomainSpec::disk(2.0, 0.05));
  EstimateOptions opt;
  opt.burn_in = 1.5;
  EstimateReport rep = nil_growth_check(e.field, opt);
  CHECK(rep.pass);
  CHECK(rep.find("B*") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.find("C*") ==
        doctest::Approx(0.19245008972987526).epsilon(1e-12));
}

TEST_CASE("growth check gates its hypotheses") {
  auto lor = make_zero_section({0.0, 0.5, Causal::Lorentzian},
                               DomainSpec::disk(0.8, 0.05));
  CHECK_THROWS_AS(nil_growth_check(lor.field), DomainError);

  auto curved = make_zero_section({-1.0, 0.5, Causal::Riemannian},
                                  DomainSpec::disk(0.8, 0.05));
  CHECK_THROWS_AS(nil_growth_check(curved.field), DomainError);

  auto hemi = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.025));
  CHECK_THROWS_AS(nil_growth_check(hemi.field), NumericError);
}

TEST_CASE("the two coarea quadratures agree to rounding") {
  // nu * area element of the graph collapses to the base element lambda^2,
  // so both sums run over identical summands.
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.025));
  auto f = ScalarField::sample(e.field.domain, e.field.params,
                               [](double x, double y) {
                                 return x * x - y * y * y + 0.5;
                               });
  double graph = 0.0, base = 0.0;
  double res = coarea_identity(e.field, f, &graph, &base);
  CHECK(res <= 1e-12 * std::max(1.0, std::fabs(base)));
  CHECK(graph == doctest::Approx(base).epsilon(1e-12));

  auto z = make_zero_section({0.0, 0.0, Causal::Riemannian},
                             DomainSpec::disk(1.0, 0.025));
  auto one = ScalarField::sample(z.field.domain, z.field.params,
                                 [](double, double) { return 1.0; });
  double ga = 0.0, ba = 0.0;
  coarea_identity(z.field, one, &ga, &ba);
  // Unit disk area; staircase quadrature converges like the covered count.
  CHECK(std::fabs(ga - 3.141592653589793) <= 6.25e-3);

  auto narrow = ScalarField::sample(DomainSpec::disk(0.5, 0.025),
                                    z.field.params,
                                    [](double, double) { return 1.0; });
  CHECK_THROWS_AS(coarea_identity(z.field, narrow), DomainError);
}

TEST_CASE("angle integral diverges on widening windows") {
  auto z = make_zero_section({0.0, 1.0, Causal::Riemannian},
                             DomainSpec::disk(2.0, 0.05));
  EstimateReport rep = angle_integrability_probe(z.field);
  CHECK(rep.bound == "angle_integrability");
  CHECK(rep.pass);
  CHECK(rep.find("min_log_slope") >= 1.0);
}

TEST_CASE("angle probe gates its hypotheses") {
  auto lor = make_zero_section({0.0, 0.5, Causal::Lorentzian},
                               DomainSpec::disk(0.8, 0.05));
  CHECK_THROWS_AS(angle_integrability_probe(lor.field), DomainError);

  // Windows collapse to a point when the burn-in swallows the mask.
  auto z = make_zero_section({0.0, 1.0, Causal::Riemannian},
                             DomainSpec::disk(1.0, 0.05));
  EstimateOptions opt;
  opt.burn_in = 5.0;
  CHECK_THROWS_AS(angle_integrability_probe(z.field, opt), DomainError);
}

TEST_CASE("report lookups and serialization") {
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.05));
  EstimateReport rep = heinz_flux_check(e.field, {0.5});
  CHECK_THROWS_AS(rep.find("no_such_witness"), DomainError);
  std::string j = rep.to_json();
  CHECK(j.find("\"bound\"") != std::string::npos);
  CHECK(j.find("heinz_flux") != std::string::npos);
  CHECK(j.find("\"witnesses\"") != std::string::npos);
  CHECK(j.find("\"pass\"") != std::string::npos);
}
