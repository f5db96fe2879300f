#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "twingraph/errors.hpp"
#include "twingraph/field_ops.hpp"
#include "twingraph/solver.hpp"

using namespace twingraph;
using twingraph::testing::sup_error;

TEST_CASE("zero data reproduces the zero section") {
  DirichletProblem prob;
  prob.domain = DomainSpec::disk(0.8, 0.05);
  prob.params = SpaceParams{0.0, 0.5, Causal::Riemannian};
  prob.H = 0.0;
  prob.boundary = [](double, double) { return 0.0; };
  SolveReport rep;
  ScalarField u = solve_dirichlet(prob, {}, &rep);
  CHECK(rep.converged);
  // The iteration stops at the curvature residual target (1e-8), so the
  // field itself is only that accurate, not machine zero.
  CHECK(sup_error(u, [](double, double) { return 0.0; }) <= 1e-7);
}

TEST_CASE("spherical cap from its own trace") {
  // u = -sqrt(1 - r^2) has curvature +1 with the upward orientation; feeding
  // its boundary values back must reproduce it to the scheme's order.
  auto exact = [](double x, double y) {
    return -std::sqrt(1.0 - x * x - y * y);
  };
  auto run = [&](double h, SolveReport* rep) {
    DirichletProblem prob;
    prob.domain = DomainSpec::disk(0.5, h);
    prob.params = SpaceParams{};
    prob.H = 1.0;
    prob.boundary = exact;
    return solve_dirichlet(prob, {}, rep);
  };
  SolveReport rep;
  double e1 = sup_error(run(0.04, &rep), exact);
  CHECK(rep.converged);
  CHECK(rep.outer_iterations > 1);
  CHECK(!rep.history.empty());
  CHECK(rep.history.back() <= 1e-8);
  CHECK(std::isinf(rep.min_spacelike));

  double e2 = sup_error(run(0.02, nullptr), exact);
  CHECK(e1 <= 0.5 * 0.04 * 0.04);
  CHECK(e2 <= 0.5 * 0.02 * 0.02);
  CHECK(e1 / e2 > 3.0);
  CHECK(e1 / e2 < 5.0);
}

TEST_CASE("exact discrete solutions converge in one sweep family") {
  // u = xy is a discretely exact minimal graph in E(0,1): its curvature
  // vanishes at the stencil level, so the solver must land on it through
  // the boundary data alone.
  DirichletProblem prob;
  prob.domain = DomainSpec::disk(0.8, 0.05);
  prob.params = SpaceParams{0.0, 1.0, Causal::Riemannian};
  prob.H = 0.0;
  prob.boundary = [](double x, double y) { return x * y; };
  ScalarField u = solve_dirichlet(prob);
  CHECK(sup_error(u, [](double x, double y) { return x * y; }) <= 1e-8);
}

TEST_CASE("lorentzian cap stays spacelike") {
  // v = sqrt(1 + r^2) has curvature +1 in L(0,0).
  auto exact = [](double x, double y) {
    return std::sqrt(1.0 + x * x + y * y);
  };
  double h = 0.02;
  DirichletProblem prob;
  prob.domain = DomainSpec::disk(0.5, h);
  prob.params = SpaceParams{0.0, 0.0, Causal::Lorentzian};
  prob.H = 1.0;
  prob.boundary = exact;
  SolveReport rep;
  ScalarField v = solve_dirichlet(prob, {}, &rep);
  CHECK(rep.converged);
  CHECK(rep.min_spacelike > 0.7);
  CHECK(rep.min_spacelike < 0.9);
  CHECK(sup_error(v, exact) <= 0.5 * h * h);
}

TEST_CASE("boundary data breaching the light cone is rejected") {
  DirichletProblem prob;
  prob.domain = DomainSpec::disk(0.5, 0.05);
  prob.params = SpaceParams{0.0, 0.0, Causal::Lorentzian};
  prob.H = 0.0;
  prob.boundary = [](double x, double) { return 2.0 * x; };
  try {
    solve_dirichlet(prob);
    FAIL("expected a light-cone breach");
  } catch (const NumericError& err) {
    CHECK(err.kind() == NumericFailure::NotSpacelike);
  }
}

TEST_CASE("an exhausted iteration budget reports no convergence") {
  DirichletProblem prob;
  prob.domain = DomainSpec::disk(0.5, 0.04);
  prob.params = SpaceParams{};
  prob.H = 1.0;
  prob.boundary = [](double x, double y) {
    return -std::sqrt(1.0 - x * x - y * y);
  };
  SolveOptions opt;
  opt.max_outer = 1;
  SolveReport rep;
  try {
    solve_dirichlet(prob, opt, &rep);
    FAIL("expected the iteration budget to run out");
  } catch (const NumericError& err) {
    CHECK(err.kind() == NumericFailure::NoConvergence);
  }
  CHECK(!rep.converged);
}
