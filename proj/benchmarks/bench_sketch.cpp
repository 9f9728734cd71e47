#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "skewproj/bounds.hpp"
#include "skewproj/estimators.hpp"
#include "skewproj/random.hpp"
#include "skewproj/sketch.hpp"
#include "skewproj/stable.hpp"

namespace {

void BM_SketchUpdate(benchmark::State& state) {
  const auto k = static_cast<std::uint32_t>(state.range(0));
  skewproj::SkewedSketch sketch(0.5, k, 1);
  std::uint64_t index = 1;
  for (auto _ : state) {
    sketch.update(index++, 1.0);
  }
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_SketchUpdate)->Arg(16)->Arg(100)->Arg(400);

void BM_Sampler(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  const skewproj::stable::StableSampler sampler({alpha, 1.0, 1.0});
  std::uint64_t t = 0;
  for (auto _ : state) {
    const auto in = skewproj::random::cms_input(7, t++, 0);
    benchmark::DoNotOptimize(sampler(in.u, in.w));
  }
}
BENCHMARK(BM_Sampler)->Arg(5)->Arg(15);

std::vector<double> samples(std::size_t k) {
  const skewproj::stable::StableSampler sampler({0.5, 1.0, 1.0});
  std::vector<double> x(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto in = skewproj::random::cms_input(3, 0, static_cast<std::uint32_t>(j));
    x[j] = sampler(in.u, in.w);
  }
  return x;
}

void BM_Estimate(benchmark::State& state) {
  const auto x = samples(400);
  const auto method = static_cast<skewproj::Method>(state.range(0));
  const auto power = skewproj::estimators::solve_optimal_lambda(0.5);
  for (auto _ : state) {
    double v = 0.0;
    switch (method) {
      case skewproj::Method::gm: v = skewproj::estimators::gm_estimate(x, 0.5).estimate; break;
      case skewproj::Method::hm: v = skewproj::estimators::hm_estimate(x, 0.5, true).estimate; break;
      case skewproj::Method::mle05: v = skewproj::estimators::mle05_estimate(x, true).estimate; break;
      default: v = skewproj::estimators::op_estimate(x, 0.5, power).estimate; break;
    }
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Estimate)
    ->Arg(static_cast<int>(skewproj::Method::gm))
    ->Arg(static_cast<int>(skewproj::Method::hm))
    ->Arg(static_cast<int>(skewproj::Method::mle05))
    ->Arg(static_cast<int>(skewproj::Method::op));

void BM_GmRightRate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(skewproj::bounds::gm_right_rate(0.75, 0.5).rate);
  }
}
BENCHMARK(BM_GmRightRate);

void BM_HmRate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        skewproj::bounds::hm_rate(0.5, 0.5, skewproj::bounds::Side::right).rate);
  }
}
BENCHMARK(BM_HmRate);

}  // namespace

BENCHMARK_MAIN();
