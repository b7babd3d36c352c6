// Serial reference kernels against their OpenMP versions, plus one
// end-to-end protocol run per kernel mode.

#include <benchmark/benchmark.h>

#include "kepmpc/bench/generate.hpp"
#include "kepmpc/kep/pipeline.hpp"
#include "kepmpc/kernels/kernels.hpp"

using namespace kepmpc;

namespace {

std::vector<FieldElement> random_vec(std::size_t n, std::uint64_t seed) {
  const auto& f = *PrimeField::default_field();
  Rng rng(seed);
  std::vector<FieldElement> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(f.random(rng));
  return v;
}

template <bool kParallel>
void BM_Products(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = random_vec(n, 1);
  const auto y = random_vec(n, 2);
  std::vector<FieldElement> out(n, x[0]);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::parallel::products(x, y, out);
    } else {
      kernels::serial::products(x, y, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

template <bool kParallel>
void BM_Dots(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::size_t len = 32;
  const auto x = random_vec(n * len, 1);
  const auto y = random_vec(n * len, 2);
  std::vector<std::size_t> offsets;
  for (std::size_t k = 0; k <= n; ++k) offsets.push_back(k * len);
  std::vector<FieldElement> out(n, x[0] - x[0]);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::parallel::dots(x, y, offsets, out);
    } else {
      kernels::serial::dots(x, y, offsets, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * len));
}

template <bool kParallel>
void BM_Reshare(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = random_vec(n, 1);
  const auto coeffs = random_vec(n, 2);
  std::vector<FieldElement> evals(3 * n, h[0]);
  std::vector<FieldElement> out(n, h[0]);
  const std::vector<std::int64_t> lambda{3, -3, 1};
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::parallel::reshare_evaluate(h, coeffs, 1, 3, evals);
      kernels::parallel::recombine(evals, lambda, 3, out);
    } else {
      kernels::serial::reshare_evaluate(h, coeffs, 1, 3, evals);
      kernels::serial::recombine(evals, lambda, 3, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_KidneyExchange(benchmark::State& state) {
  const auto quotes = bench::generate_pairs(static_cast<int>(state.range(0)), 7);
  SessionConfig cfg;
  cfg.kernel_mode = state.range(1) ? kernels::Mode::kParallel : kernels::Mode::kSerial;
  kep::KepParams params;
  for (auto _ : state) {
    const auto run = kep::solve_kep(cfg, quotes, params, 3);
    benchmark::DoNotOptimize(run.donor.data());
  }
  state.SetLabel(state.range(1) ? "openmp" : "serial");
}

}  // namespace

BENCHMARK(BM_Products<false>)->Name("products/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_Products<true>)->Name("products/openmp")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_Dots<false>)->Name("dots/serial")->Range(1 << 6, 1 << 12);
BENCHMARK(BM_Dots<true>)->Name("dots/openmp")->Range(1 << 6, 1 << 12);
BENCHMARK(BM_Reshare<false>)->Name("reshare/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_Reshare<true>)->Name("reshare/openmp")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_KidneyExchange)->Name("kep_ip")->Args({6, 0})->Args({6, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
