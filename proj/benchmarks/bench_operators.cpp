#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "cfor/cases.hpp"
#include "cfor/euler.hpp"
#include "cfor/filters.hpp"
#include "cfor/grid_ops.hpp"
#include "cfor/incompressible.hpp"
#include "cfor/kernels.hpp"

using namespace cfor;

namespace {

constexpr double kPi = std::numbers::pi;

Grid square(int n, double length) { return Grid::plane(n, n, length / n, length / n); }

Field wavy(const Grid& g) {
  return Field::sample(g, [](double x, double y) { return std::sin(x + 0.3) * std::cos(2 * y) + 0.1 * std::sin(5 * x); });
}

void BM_StencilGeneration(benchmark::State& state) {
  const auto family = state.range(0) == 0 ? KernelSpec::hermite(3.05) : KernelSpec::shannon(3.2);
  const int q = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(stencil(family, q));
}
BENCHMARK(BM_StencilGeneration)->ArgsProduct({{0, 1}, {0, 1, 2}})->ArgNames({"rsk", "q"});

void BM_HalfGridStencil(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(halfgrid_stencil(KernelSpec::hermite(2.5)));
}
BENCHMARK(BM_HalfGridStencil);

void BM_Derivative1d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = Grid::line(n, 5.0 / n);
  const Field f = wavy(g);
  const StencilWeights w = stencil(KernelSpec::hermite(3.05), 1);
  for (auto _ : state) benchmark::DoNotOptimize(apply_derivative(f, w, Axis::X));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Derivative1d)->Arg(400)->Arg(1200);

void BM_Derivative2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Field f = wavy(square(n, 2 * kPi));
  const StencilWeights w = stencil(KernelSpec::hermite(3.05), 1);
  const Axis axis = state.range(1) == 0 ? Axis::X : Axis::Y;
  for (auto _ : state) benchmark::DoNotOptimize(apply_derivative(f, w, axis, Wrap::Alias));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Derivative2d)->ArgsProduct({{64, 80}, {0, 1}})->ArgNames({"n", "y"});

void BM_ConjugateLowpass2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = square(n, 2 * kPi);
  const Field f = wavy(g);
  const ConjugateFilterBank bank(KernelSpec::hermite(3.05, 32, 88, g.dx), 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(apply_conjugate_lowpass(f, bank, Wrap::Alias));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ConjugateLowpass2d)->Arg(64)->Arg(80);

void BM_Projection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = square(n, 2 * kPi);
  const Projector projector(g, KernelSpec::hermite(3.05, 32, 88, g.dx));
  const Field u = Field::sample(g, [](double x, double y) { return std::sin(x) * std::cos(y) + std::cos(2 * x); });
  const Field v = Field::sample(g, [](double x, double y) { return std::sin(x + y); });
  long iterations = 0;
  for (auto _ : state) {
    const ProjectionResult p = projector.project(u, v);
    iterations = p.iterations;
    benchmark::DoNotOptimize(p.u);
  }
  state.counters["bicg_iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_Projection)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_EulerRhs2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = square(n, 10.0);
  const VortexParams vp;
  Primitive w{Field(g), Field(g), Field(g), Field(g)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const FlowPoint e = vortex_exact(g.x(i), g.y(j), 0.0, vp);
      w.rho(i, j) = e.rho;
      w.u(i, j) = e.u;
      w.v(i, j) = e.v;
      w.p(i, j) = e.p;
    }
  }
  const EulerState s = conservative_from_primitive(w, vp.gamma);
  const Differentiator d(KernelSpec::hermite(3.05, 32, 88, g.dx), Wrap::Alias);
  for (auto _ : state) benchmark::DoNotOptimize(euler_rhs_2d(s, d));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_EulerRhs2d)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
