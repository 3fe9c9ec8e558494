#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fastdeblur/boundary.hpp"
#include "fastdeblur/multidim.hpp"
#include "fastdeblur/operators.hpp"
#include "fastdeblur/regularize.hpp"
#include "fastdeblur/trig.hpp"

using namespace fastdeblur;

namespace {

std::vector<double> random_vec(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = dist(rng);
  return v;
}

} // namespace

static void BM_CosineApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto v = random_vec(n);
  for (auto _ : state) {
    auto y = cosine_apply(v, Direction::forward);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CosineApply)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

static void BM_StructuredApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = build_real_transform(BoundaryBasis::hoc_cosine, n);
  const auto v = random_vec(n);
  for (auto _ : state) {
    auto y = transform_apply(t, std::span<const double>(v.data(), v.size()));
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_StructuredApply)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity();

static void BM_StructuredInverse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto t = build_real_transform(BoundaryBasis::hoc_cosine, n);
  const auto v = random_vec(n);
  for (auto _ : state) {
    auto y = transform_apply_inverse(t, std::span<const double>(v.data(), v.size()));
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_StructuredInverse)
    ->RangeMultiplier(4)
    ->Range(1 << 10, 1 << 20)
    ->Complexity();

static void BM_BlurApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Psf psf = gaussian_psf(8, 2.5);
  const auto op = build_operator(psf, n, BoundaryCondition::hoc_cosine);
  const auto v = random_vec(n);
  for (auto _ : state) {
    auto y = blur_apply(op, v);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BlurApply)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void BM_TikhonovSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Psf psf = gaussian_psf(8, 2.5);
  const auto op = build_operator(psf, n, BoundaryCondition::hoc_cosine);
  const auto L = smoothing_eigenvalues(SmootherKind::laplacian, op);
  const auto g = random_vec(n);
  for (auto _ : state) {
    auto f = tikhonov_solve(op, L, g, 1e-4);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TikhonovSolve)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

static void BM_TikhonovSolve2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Psf2D psf = out_of_focus_psf(4);
  const auto op = build_operator_2d(psf, n, n, BoundaryCondition::hoc_cosine);
  const auto L = smoothing_eigenvalues_2d(SmootherKind::identity, op);
  const auto g = random_vec(n * n);
  for (auto _ : state) {
    auto f = tikhonov_solve_2d(op, L, g, 1e-4);
    benchmark::DoNotOptimize(f.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TikhonovSolve2D)->RangeMultiplier(2)->Range(64, 512);

BENCHMARK_MAIN();
