#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "twingraph/catalog.hpp"
#include "twingraph/errors.hpp"
#include "twingraph/field_ops.hpp"

using namespace twingraph;
using twingraph::testing::sup_interior_error;

TEST_CASE("every catalog entry constructs and reports its curvature") {
  auto window = DomainSpec::rectangle(0.5, 0.5, 0.02);
  for (const auto& name : catalog_names()) {
    CatalogEntry e = make_example(name, 0.5, window);
    CHECK(e.field.domain.count_inside() > 0);
    ScalarField H = mean_curvature(e.field);
    double tol = 20.0 * 0.02 * 0.02;
    CHECK(sup_interior_error(H, e.expected_H) <= tol);
  }
}

TEST_CASE("pinned center values") {
  auto window = DomainSpec::disk(0.5, 0.1);
  int c = window.nx / 2;

  auto hemi = make_example("hemisphere", 1.0, window);
  CHECK(hemi.field.at(c, c) == -1.0);
  CHECK(hemi.expected_H == 1.0);
  CHECK(hemi.field.params.riemannian());

  auto par = make_example("paraboloid", 1.0, window);
  CHECK(par.field.at(c, c) == 1.0);
  CHECK(par.expected_H == 1.0);
  CHECK(!par.field.params.riemannian());

  auto cyl = make_example("hyperbolic_cylinder", 0.5, window);
  CHECK(cyl.field.at(c, c) == 1.0);

  auto nil = make_example("nil_hxy", 0.7, window);
  CHECK(nil.field.at(c, c) == 0.0);
  CHECK(nil.expected_H == 0.0);
  CHECK(nil.field.params.bundle == 0.7);

  auto sch = make_example("scherk", 0.0, window);
  CHECK(sch.field.at(c, c) == 0.0);
  CHECK(sch.expected_H == 0.0);

  auto z = make_example("zero_section", 0.3, window);
  CHECK(z.field.at(c, c) == 0.0);
  CHECK(z.field.params.bundle == 0.3);
}

TEST_CASE("catalog curvatures at tight tolerances") {
  // Discrete curvature sup-deviation from the expected constant, h = 0.02.
  // Tolerances sit roughly 20x above measured values to absorb platform
  // rounding differences without losing the order of magnitude.
  double h = 0.02;
  auto disk = DomainSpec::disk(0.5, h);
  auto rect = DomainSpec::rectangle(0.5, 0.5, h);

  auto dev = [](const CatalogEntry& e) {
    return sup_interior_error(mean_curvature(e.field), e.expected_H);
  };

  // The twisted zero section is O(tau^4 h^2)-minimal, not exactly minimal.
  CHECK(dev(make_example("zero_section", 1.0, disk)) <= 2e-5);
  CHECK(dev(make_example("nil_hxy", 1.0, disk)) <= 1e-12);
  CHECK(dev(make_example("hemisphere", 1.0, disk)) <= 1e-3);
  CHECK(dev(make_example("paraboloid", 1.0, disk)) <= 1e-3);
  CHECK(dev(make_example("hyperbolic_cylinder", 0.5, rect)) <= 4e-3);
  CHECK(dev(make_example("semitrough", 0.5, rect)) <= 2e-3);
  CHECK(dev(make_example("scherk", 0.0, rect)) <= 3e-4);
}

TEST_CASE("semitrough profile inverts its defining relation") {
  for (double x : {0.5, 1.0, 2.0, 5.0}) {
    double t = x - 0.5 / std::tanh(x);
    CHECK(semitrough_profile_x(t) == doctest::Approx(x).epsilon(1e-10));
  }
}

TEST_CASE("catalog rejects bad requests") {
  auto window = DomainSpec::disk(0.5, 0.1);
  CHECK_THROWS_AS(make_example("helicoid", 1.0, window), DomainError);
  CHECK_THROWS_AS(make_example("hemisphere", 0.0, window), DomainError);
  // Window radius 0.5 reaches the rim of the H = 2 hemisphere.
  CHECK_THROWS_AS(make_example("hemisphere", 2.0, window), DomainError);
  auto wide = DomainSpec::rectangle(1.6, 0.5, 0.1);
  CHECK_THROWS_AS(make_example("scherk", 0.0, wide), DomainError);
}

TEST_CASE("zero sections gate the light cone") {
  SpaceParams lor{0.0, 2.0, Causal::Lorentzian};
  CHECK_THROWS_AS(make_zero_section(lor, DomainSpec::disk(0.6, 0.05)),
                  DomainError);
  auto ok = make_zero_section(lor, DomainSpec::disk(0.4, 0.05));
  CHECK(ok.expected_H == 0.0);

  SpaceParams hyp{-4.0, 0.0, Causal::Riemannian};
  CHECK_THROWS_AS(make_zero_section(hyp, DomainSpec::disk(1.1, 0.05)),
                  DomainError);
}
