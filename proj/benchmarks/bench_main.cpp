#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bblab/bodies.hpp"
#include "bblab/envelope.hpp"
#include "bblab/supconv.hpp"
#include "bblab/symmetry.hpp"

namespace {

using namespace bblab;

GridFunction bump_1d(std::size_t cells) {
  const double h = 2.0 / static_cast<double>(cells);
  return GridFunction::sample({-1.0}, h, {cells}, [](std::span<const double> x) {
    return std::max(0.0, 1.0 - x[0] * x[0]);
  });
}

GridFunction bump_2d(std::size_t cells) {
  const double h = 2.0 / static_cast<double>(cells);
  return GridFunction::sample({-1.0, -1.0}, h, {cells, cells}, [](std::span<const double> x) {
    return std::max(0.0, 1.0 - x[0] * x[0] - x[1] * x[1]) + 0.2 * std::sin(7.0 * x[0]) * std::sin(5.0 * x[1]) + 0.2;
  });
}

void BM_SupConvolution1D(benchmark::State& state) {
  const auto f = bump_1d(static_cast<std::size_t>(state.range(0)));
  const RationalWeight lambda(1, 2);
  const ConcavityIndex s(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sup_convolution(f, f, lambda, s));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SupConvolution1D)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

void BM_SupConvolution2D(benchmark::State& state) {
  const auto f = bump_2d(static_cast<std::size_t>(state.range(0)));
  const RationalWeight lambda(1, 3);
  const ConcavityIndex s(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(sup_convolution(f, f, lambda, s));
}
BENCHMARK(BM_SupConvolution2D)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MinkowskiCells(benchmark::State& state) {
  const auto body = lift_graph(bump_1d(static_cast<std::size_t>(state.range(0))), 2).voxels;
  const RationalWeight lambda(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(minkowski_combine(body, body, lambda));
}
BENCHMARK(BM_MinkowskiCells)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Envelope2D(benchmark::State& state) {
  const auto f = bump_2d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(concave_envelope(f));
}
BENCHMARK(BM_Envelope2D)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Symmetrize(benchmark::State& state) {
  const auto body = lift_graph(bump_1d(static_cast<std::size_t>(state.range(0))), 2).voxels;
  const SplitBody c(body, 1);
  for (auto _ : state) benchmark::DoNotOptimize(s_symmetrize(c));
}
BENCHMARK(BM_Symmetrize)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
