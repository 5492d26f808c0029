#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "relgs/hamiltonian.hpp"
#include "relgs/minimizer.hpp"
#include "relgs/transform.hpp"
#include "relgs/verify.hpp"

using namespace relgs;

namespace {

Field random_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> v(g.size());
  for (auto& x : v) x = 0.2 + std::abs(gauss(rng));
  return Field(g, std::move(v));
}

Problem problem_for(int dim) {
  Problem pb;
  pb.dim = dim;
  pb.m = 1.0;
  pb.eta = 0.1;
  pb.sigma = 1.5;
  pb.p = 3.0;
  pb.potential = PotentialSpec::power_law(dim == 2 ? 0.5 : 1.0);
  pb.weak_q = dim == 2 ? 4.0 : 3.0;
  pb.target_mass = 1.0;
  return pb;
}

void bench_transform_roundtrip(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Grid g = make_grid(dim, 8.0, n);
  const Field f = random_field(g, 1);
  for (auto _ : state) {
    const auto spec = forward_transform(g, f.values());
    auto back = inverse_transform(g, spec);
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(g.size()));
}

void bench_energy(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Grid g = make_grid(dim, 8.0, n);
  const Hamiltonian ham(problem_for(dim), g);
  const Field f = random_field(g, 2);
  for (auto _ : state) {
    const auto e = ham.energy(f);
    benchmark::DoNotOptimize(e.total);
  }
}

void bench_gradient(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const Grid g = make_grid(dim, 8.0, n);
  const Hamiltonian ham(problem_for(dim), g);
  const Field f = random_field(g, 3);
  for (auto _ : state) {
    const Field grad = ham.gradient(f);
    benchmark::DoNotOptimize(grad.values().data());
  }
}

void bench_rearrange(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g = make_grid(2, 8.0, n);
  const Field f = random_field(g, 4);
  for (auto _ : state) {
    const Field r = rearrange(f);
    benchmark::DoNotOptimize(r.values().data());
  }
}

void bench_solve_2d(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem pb = problem_for(2);
  const Grid g = make_grid(2, 8.0, n);
  const Hamiltonian ham(pb, g);
  InitialGuess ig;
  ig.width = 2.0;
  const Field w0 = initial_guess(pb, g, ig);
  SolveOptions opts;
  opts.tol_res = 1e-6;
  for (auto _ : state) {
    const SolveReport rep = solve(ham, w0, opts);
    benchmark::DoNotOptimize(rep.I_value);
  }
}

}  // namespace

BENCHMARK(bench_transform_roundtrip)
    ->Args({2, 64})
    ->Args({2, 128})
    ->Args({3, 48})
    ->Args({3, 64});
BENCHMARK(bench_energy)->Args({2, 64})->Args({2, 128})->Args({3, 48});
BENCHMARK(bench_gradient)->Args({2, 64})->Args({2, 128})->Args({3, 48});
BENCHMARK(bench_rearrange)->Arg(64)->Arg(128);
BENCHMARK(bench_solve_2d)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
