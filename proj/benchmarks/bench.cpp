#include <benchmark/benchmark.h>

#include <cmath>
#include <sstream>

#include "twingraph/catalog.hpp"
#include "twingraph/duality.hpp"
#include "twingraph/field_ops.hpp"
#include "twingraph/grid_io.hpp"
#include "twingraph/solver.hpp"

using namespace twingraph;

namespace {

ScalarField hemisphere(int n) {
  double h = 1.6 / (n - 1);
  return make_example("hemisphere", 1.0, DomainSpec::disk(0.8, h)).field;
}

void bm_mean_curvature(benchmark::State& state) {
  ScalarField u = hemisphere(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ScalarField H = mean_curvature(u);
    benchmark::DoNotOptimize(H.values.data());
  }
  state.SetItemsProcessed(state.iterations() * u.domain.nx * u.domain.ny);
}

void bm_dualize(benchmark::State& state) {
  ScalarField u = hemisphere(static_cast<int>(state.range(0)));
  DualizeOptions o;
  o.cmc_tol = 1e-2;
  for (auto _ : state) {
    DualPair pair = dualize(u, o);
    benchmark::DoNotOptimize(pair.target.values.data());
  }
}

void bm_solve_cap(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  DirichletProblem prob;
  prob.domain = DomainSpec::disk(0.5, 1.0 / (n - 1));
  prob.params = {0.0, 0.0, Causal::Riemannian};
  prob.H = 1.0;
  prob.boundary = [](double, double) { return 0.0; };
  for (auto _ : state) {
    ScalarField u = solve_dirichlet(prob, {});
    benchmark::DoNotOptimize(u.values.data());
  }
}

void bm_grid_roundtrip(benchmark::State& state) {
  ScalarField u = hemisphere(static_cast<int>(state.range(0)));
  std::ostringstream os;
  write_grid(os, u, 1.0);
  std::string text = os.str();
  for (auto _ : state) {
    std::istringstream is(text);
    GridFile g = read_grid(is);
    benchmark::DoNotOptimize(g.field.values.data());
  }
  state.SetBytesProcessed(state.iterations() * text.size());
}

}  // namespace

BENCHMARK(bm_mean_curvature)->Arg(129)->Arg(257)->Arg(513);
BENCHMARK(bm_dualize)->Arg(129)->Arg(257);
BENCHMARK(bm_solve_cap)->Arg(33)->Arg(49)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_grid_roundtrip)->Arg(257);

BENCHMARK_MAIN();
