#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "twingraph/catalog.hpp"
#include "twingraph/duality.hpp"
#include "twingraph/errors.hpp"

using namespace twingraph;
using twingraph::testing::sup_gauge_error;

namespace {

double sup_omega_product(const FrameField& f, const FrameField& g) {
  const DomainSpec& d = f.domain;
  double worst = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      worst = std::max(worst, std::fabs(f.w(i, j) * g.w(i, j) - 1.0));
    }
  return worst;
}

}  // namespace

TEST_CASE("twinning the frame twice returns the original") {
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.05));
  FrameField f = generalized_gradient(e.field);
  FrameField t = twin_gradient(f, TwinDirection::EtoL, 1.0);
  CHECK(!t.params.riemannian());
  CHECK(t.params.bundle == 1.0);
  CHECK(sup_omega_product(f, t) <= 1e-15);

  FrameField back = twin_gradient(t, TwinDirection::LtoE, 0.0);
  const DomainSpec& d = f.domain;
  double worst = 0.0;
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      if (!d.inside(i, j)) continue;
      worst = std::max(worst, std::fabs(back.a(i, j) - f.a(i, j)));
      worst = std::max(worst, std::fabs(back.b(i, j) - f.b(i, j)));
      worst = std::max(worst, std::fabs(back.w(i, j) - f.w(i, j)));
    }
  CHECK(worst <= 1e-14);
}

TEST_CASE("dual of the minimal section is the tau graph") {
  // The zero section of E(0,1) is minimal; its twin is the spacelike graph
  // v = sqrt(1 + r^2) (up to an additive constant) with curvature tau = 1
  // in L(0,0).  The grid dual must land on it at second order.
  double h = 0.025;
  auto z = make_zero_section({0.0, 1.0, Causal::Riemannian},
                             DomainSpec::disk(0.8, h));
  DualizeOptions opts;
  opts.cmc_tol = 1e-3;
  DualPair pair = dualize(z.field, opts);

  CHECK(pair.source_H == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(!pair.target.params.riemannian());
  CHECK(pair.target.params.kappa == 0.0);
  CHECK(pair.target.params.bundle == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(pair.residuals.omega_product <= 1e-12);
  CHECK(pair.residuals.integrability <= h * h);
  CHECK(pair.residuals.twin <= 5.0 * h * h);
  CHECK(sup_gauge_error(pair.target, [](double x, double y) {
          return std::sqrt(1.0 + x * x + y * y);
        }) <= 5.0 * h * h);
  CHECK(roundtrip_error(pair, opts) <= 5.0 * h * h);
}

TEST_CASE("dual of the unit hemisphere is flat") {
  double h = 0.025;
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, h));
  DualizeOptions opts;
  opts.cmc_tol = 1e-3;
  DualPair pair = dualize(e.field, opts);
  CHECK(pair.source_H == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(pair.target.params.bundle == doctest::Approx(pair.source_H));
  CHECK(sup_gauge_error(pair.target, [](double, double) { return 0.0; }) <=
        5.0 * h * h);
}

TEST_CASE("dual of the paraboloid is flat in the nil direction") {
  double h = 0.025;
  auto e = make_example("paraboloid", 1.0, DomainSpec::disk(0.8, h));
  DualizeOptions opts;
  opts.cmc_tol = 1e-3;
  DualPair pair = dualize(e.field, opts);
  CHECK(pair.target.params.riemannian());
  CHECK(pair.target.params.bundle == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(sup_gauge_error(pair.target, [](double, double) { return 0.0; }) <=
        5.0 * h * h);
}

TEST_CASE("twisted zero sections round trip at quadrature order") {
  // The source frames are exact, but the twin one-form tau (x, y)/omega is
  // curved, so the staircase path quadrature leaves O(h^2): measured about
  // 0.1 h^2 at tau = 1.
  double h = 0.05;
  for (double tau : {0.5, 1.0}) {
    auto z = make_zero_section({0.0, tau, Causal::Riemannian},
                               DomainSpec::disk(0.8, h));
    DualizeOptions opts;
    opts.cmc_tol = 1e-3;
    DualPair pair = dualize(z.field, opts);
    CHECK(roundtrip_error(pair, opts) <= 0.5 * h * h);
  }
}

TEST_CASE("dualize is invariant under vertical translation of the source") {
  double h = 0.05;
  auto z = make_zero_section({0.0, 1.0, Causal::Riemannian},
                             DomainSpec::disk(0.8, h));
  ScalarField shifted = z.field;
  for (double& v : shifted.values) v += 5.0;
  DualizeOptions opts;
  opts.cmc_tol = 1e-3;
  DualPair a = dualize(z.field, opts);
  DualPair b = dualize(shifted, opts);
  CHECK(gauge_distance(a.target, b.target) <= 1e-9);
}

TEST_CASE("linear one-forms integrate exactly") {
  auto d = DomainSpec::disk(0.8, 0.05);
  SpaceParams sp;
  std::vector<double> fx(static_cast<size_t>(d.nx) * d.ny, 0.0);
  std::vector<double> fy(fx.size());
  for (int j = 0; j < d.ny; ++j)
    for (int i = 0; i < d.nx; ++i) {
      fx[d.index(i, j)] = 2.0;
      fy[d.index(i, j)] = -3.0;
    }
  auto anchor = default_anchor(d);
  ScalarField F = integrate_form(d, sp, fx, fy, anchor);
  double ax = d.x(anchor.first), ay = d.y(anchor.second);
  CHECK(testing::sup_error(F, [ax, ay](double x, double y) {
          return 2.0 * (x - ax) - 3.0 * (y - ay);
        }) <= 1e-13);
  CHECK(F.at(anchor.first, anchor.second) == 0.0);
}

TEST_CASE("default anchor sits at the centroid cell") {
  auto d = DomainSpec::disk(0.8, 0.05);
  auto a = default_anchor(d);
  CHECK(d.x(a.first) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(d.y(a.second) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dualize refuses non-constant curvature sources") {
  SpaceParams sp;
  auto u = ScalarField::sample(DomainSpec::disk(0.6, 0.05), sp,
                               [](double x, double) { return x * x * x * x; });
  CHECK_THROWS_AS(dualize(u), NumericError);
  try {
    dualize(u);
  } catch (const NumericError& err) {
    CHECK(err.kind() == NumericFailure::NotConstantCurvature);
  }
}

TEST_CASE("curvature prescriptions must match the measurement") {
  auto e = make_example("hemisphere", 1.0, DomainSpec::disk(0.8, 0.025));
  DualizeOptions opts;
  opts.cmc_tol = 1e-3;
  opts.prescribed_H = 0.5;
  try {
    dualize(e.field, opts);
    FAIL("expected a curvature contradiction");
  } catch (const NumericError& err) {
    CHECK(err.kind() == NumericFailure::InfeasibleTarget);
  }
}

TEST_CASE("dualize refuses domains with holes") {
  auto d = DomainSpec::disk(0.8, 0.05);
  int c = d.nx / 2;
  for (int j = -1; j <= 1; ++j)
    for (int i = -1; i <= 1; ++i) d.mask[d.index(c + i, c + j)] = 0;
  SpaceParams sp{0.0, 1.0, Causal::Riemannian};
  auto z = ScalarField::sample(d, sp, [](double, double) { return 0.0; });
  CHECK_THROWS_AS(dualize(z), DomainError);
}

TEST_CASE("masked anchors are rejected") {
  auto z = make_zero_section({0.0, 0.5, Causal::Riemannian},
                             DomainSpec::disk(0.8, 0.05));
  DualizeOptions opts;
  opts.anchor = std::pair{0, 0};  // corner cell is outside the disk
  CHECK_THROWS_AS(dualize(z.field, opts), DomainError);
}
