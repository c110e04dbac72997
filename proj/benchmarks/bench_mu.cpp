#include <benchmark/benchmark.h>

#include <string>

#include "mukit/block_structure.hpp"
#include "mukit/constructors.hpp"
#include "mukit/mu.hpp"
#include "mukit/spectral.hpp"

namespace {

using namespace mukit;

void BM_SpectralNorm(benchmark::State& state) {
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_Eigenvalues(benchmark::State& state) {
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(m));
}
BENCHMARK(BM_Eigenvalues)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

BlockStructure mixed(std::size_t n) {
  // Alternating scalar and 2x2 full blocks, a trailing scalar when needed.
  std::string s;
  std::size_t used = 0;
  while (used < n) {
    if (!s.empty()) s += ',';
    if (n - used >= 2 && (used / 3) % 2 == 1) {
      s += "f:2";
      used += 2;
    } else {
      s += "r:1";
      used += 1;
    }
  }
  return parse_structure(s, n);
}

void BM_MuLower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(n, 3);
  const auto b = mixed(n);
  for (auto _ : state) benchmark::DoNotOptimize(mu_lower(m, b).value);
}
BENCHMARK(BM_MuLower)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_MuUpper(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(n, 4);
  const auto b = mixed(n);
  for (auto _ : state) benchmark::DoNotOptimize(mu_upper(m, b).value);
}
BENCHMARK(BM_MuUpper)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_Bruteforce(benchmark::State& state) {
  const Matrix m = random_matrix(3, 5);
  const auto b = scalar_structure(3);
  MuOptions opts;
  opts.grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mu_bruteforce(m, b, opts).value);
}
BENCHMARK(BM_Bruteforce)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
