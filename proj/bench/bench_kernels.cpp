// Benchmarks comparing the OpenMP kernel lane against the serial reference.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tfcalc/kernels.hpp"
#include "tfcalc/ref_kernels.hpp"

using namespace tfcalc;

namespace {
std::vector<cd> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<cd> v(n);
  for (auto& x : v) x = cd(dist(rng), dist(rng));
  return v;
}
}  // namespace

static void BM_dft_omp(benchmark::State& state) {
  Group g({static_cast<int>(state.range(0))});
  auto in = random_vector(g.order(), 1);
  std::vector<cd> out(g.order());
  for (auto _ : state) {
    kernels::dft(g, in.data(), out.data(), true, 1.0);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_dft_omp)->Arg(64)->Arg(256);

static void BM_dft_serial(benchmark::State& state) {
  Group g({static_cast<int>(state.range(0))});
  auto in = random_vector(g.order(), 1);
  std::vector<cd> out(g.order());
  for (auto _ : state) {
    ref::dft(g, in.data(), out.data(), true, 1.0);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_dft_serial)->Arg(64)->Arg(256);

static void BM_windowed_transform_omp(benchmark::State& state) {
  Group space = phase_space(Group({static_cast<int>(state.range(0))}));
  auto f = random_vector(space.order(), 2);
  auto w = random_vector(space.order(), 3);
  std::vector<cd> out(space.order() * space.order());
  for (auto _ : state) {
    kernels::windowed_transform(space, f.data(), w.data(), 1.0, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_windowed_transform_omp)->Arg(8)->Arg(12);

static void BM_windowed_transform_serial(benchmark::State& state) {
  Group space = phase_space(Group({static_cast<int>(state.range(0))}));
  auto f = random_vector(space.order(), 2);
  auto w = random_vector(space.order(), 3);
  std::vector<cd> out(space.order() * space.order());
  for (auto _ : state) {
    ref::windowed_transform(space, f.data(), w.data(), 1.0, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_windowed_transform_serial)->Arg(8)->Arg(12);

static void BM_colsup_omp(benchmark::State& state) {
  Group space = phase_space(Group({static_cast<int>(state.range(0))}));
  auto f = random_vector(space.order(), 4);
  auto w = random_vector(space.order(), 5);
  std::vector<double> out(space.order());
  for (auto _ : state) {
    kernels::windowed_transform_colsup(space, f.data(), w.data(), 1.0, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_colsup_omp)->Arg(8)->Arg(12)->Arg(16);

static void BM_colsup_serial(benchmark::State& state) {
  Group space = phase_space(Group({static_cast<int>(state.range(0))}));
  auto f = random_vector(space.order(), 4);
  auto w = random_vector(space.order(), 5);
  std::vector<double> out(space.order());
  for (auto _ : state) {
    ref::windowed_transform_colsup(space, f.data(), w.data(), 1.0, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_colsup_serial)->Arg(8)->Arg(12)->Arg(16);

static void BM_kn_matrix_omp(benchmark::State& state) {
  Group g({static_cast<int>(state.range(0))});
  auto sigma = random_vector(g.order() * g.order(), 6);
  std::vector<cd> out(g.order() * g.order());
  for (auto _ : state) {
    kernels::kn_matrix(g, sigma.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_kn_matrix_omp)->Arg(16)->Arg(64);

static void BM_kn_matrix_serial(benchmark::State& state) {
  Group g({static_cast<int>(state.range(0))});
  auto sigma = random_vector(g.order() * g.order(), 6);
  std::vector<cd> out(g.order() * g.order());
  for (auto _ : state) {
    ref::kn_matrix(g, sigma.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_kn_matrix_serial)->Arg(16)->Arg(64);

static void BM_twisted_omp(benchmark::State& state) {
  Group g({static_cast<int>(state.range(0))});
  auto f = random_vector(g.order() * g.order(), 7);
  auto h = random_vector(g.order() * g.order(), 8);
  std::vector<cd> out(g.order() * g.order());
  for (auto _ : state) {
    kernels::twisted_convolution(g, f.data(), h.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_twisted_omp)->Arg(12)->Arg(16);

static void BM_twisted_serial(benchmark::State& state) {
  Group g({static_cast<int>(state.range(0))});
  auto f = random_vector(g.order() * g.order(), 7);
  auto h = random_vector(g.order() * g.order(), 8);
  std::vector<cd> out(g.order() * g.order());
  for (auto _ : state) {
    ref::twisted_convolution(g, f.data(), h.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_twisted_serial)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
