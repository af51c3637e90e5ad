#include <benchmark/benchmark.h>

#include <cmath>

#include "curvosc/cartesian.hpp"
#include "curvosc/closed_form.hpp"
#include "curvosc/jacobi.hpp"
#include "curvosc/model.hpp"
#include "curvosc/ode.hpp"
#include "curvosc/quantum.hpp"

namespace {

using namespace curvosc;

void BM_ClosedFormState(benchmark::State& state) {
  const auto traj = make_trajectory({1.0, 3.0}, 1.0, 3.0);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_state(traj, t));
    t += 0.01;
  }
}
BENCHMARK(BM_ClosedFormState);

void BM_PolarRhs(benchmark::State& state) {
  const ModelParams params{-1.0, 2.0};
  const ClassicalState s{0.6, 0.3, 0.1, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(polar_rhs(params, s));
}
BENCHMARK(BM_PolarRhs);

void BM_IntegrateBoundedPeriod(benchmark::State& state) {
  const ModelParams params{1.0, 3.0};
  const auto traj = make_trajectory(params, 1.0, 3.0);
  const auto s0 = eval_state(traj, 0.0);
  IntegrationConfig cfg;
  cfg.t1 = 1.8137993642342178506;  // one radial period
  cfg.rel_tol = 1e-10;
  cfg.abs_tol = 1e-10;
  cfg.n_samples = 64;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(params, s0, cfg));
}
BENCHMARK(BM_IntegrateBoundedPeriod);

void BM_BridgeVerify(benchmark::State& state) {
  const CartesianAmplitudes amps{CartesianKind::Trig, 2.0, 1.0, 1.5707963267948966, 0.0};
  const ModelParams params{1.0, std::sqrt(10.0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_bridge(amps, params, 256, 0.0, 3.0));
}
BENCHMARK(BM_BridgeVerify);

void BM_JacobiEval(benchmark::State& state) {
  const int n = int(state.range(0));
  double t = -0.99;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_eval(n, 1.0, -5.7, t));
    t += 1e-4;
  }
}
BENCHMARK(BM_JacobiEval)->Arg(2)->Arg(8);

void BM_EigenstateNorm(benchmark::State& state) {
  const QuantumParams qp{-1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(make_eigenstate(qp, 2, 1));
}
BENCHMARK(BM_EigenstateNorm);

void BM_InnerProduct(benchmark::State& state) {
  const QuantumParams qp{1.0, 9.9};
  const auto s1 = make_eigenstate(qp, 1, 0);
  const auto s2 = make_eigenstate(qp, 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(inner_product(qp, s1, s2));
}
BENCHMARK(BM_InnerProduct);

}  // namespace

BENCHMARK_MAIN();
