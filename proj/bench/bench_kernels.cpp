// Serial reference vs OpenMP kernels on random configurations.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "droplet/fekete_kernels.hpp"

namespace {

using droplet::Complex;
using droplet::Symmetry;
namespace k = droplet::kernels;

std::vector<Complex> cloud(int n, bool upper) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Complex> z(n);
  for (auto& x : z) {
    x = {u(rng), u(rng)};
    if (upper) x.imag(std::abs(x.imag()) + 1e-3);
  }
  return z;
}

template <double (*Energy)(const std::vector<Complex>&, Symmetry)>
void BM_Energy(benchmark::State& state) {
  const auto z = cloud(static_cast<int>(state.range(0)), false);
  for (auto _ : state) benchmark::DoNotOptimize(Energy(z, Symmetry::ComplexEnsemble));
  state.SetComplexityN(state.range(0));
}

template <void (*Gradient)(const std::vector<Complex>&, Symmetry, std::vector<Complex>&)>
void BM_Gradient(benchmark::State& state) {
  const bool symplectic = state.range(1) != 0;
  const auto z = cloud(static_cast<int>(state.range(0)), symplectic);
  std::vector<Complex> g;
  const Symmetry s = symplectic ? Symmetry::SymplecticEnsemble : Symmetry::ComplexEnsemble;
  for (auto _ : state) {
    Gradient(z, s, g);
    benchmark::DoNotOptimize(g.data());
  }
}

template <double (*Change)(const std::vector<Complex>&, const std::vector<Complex>&, Symmetry)>
void BM_EnergyChange(benchmark::State& state) {
  const auto z = cloud(static_cast<int>(state.range(0)), false);
  std::vector<Complex> dz(z.size(), Complex{1e-6, -2e-6});
  for (auto _ : state) benchmark::DoNotOptimize(Change(z, dz, Symmetry::ComplexEnsemble));
}

}  // namespace

BENCHMARK(BM_Energy<k::interaction_energy_serial>)
    ->Name("energy/serial")
    ->RangeMultiplier(4)
    ->Range(256, 4096);
BENCHMARK(BM_Energy<k::interaction_energy_parallel>)
    ->Name("energy/parallel")
    ->RangeMultiplier(4)
    ->Range(256, 4096)
    ->UseRealTime();
BENCHMARK(BM_Gradient<k::interaction_gradient_serial>)
    ->Name("gradient/serial")
    ->ArgsProduct({{256, 1024, 4096}, {0, 1}});
BENCHMARK(BM_Gradient<k::interaction_gradient_parallel>)
    ->Name("gradient/parallel")
    ->ArgsProduct({{256, 1024, 4096}, {0, 1}})
    ->UseRealTime();
BENCHMARK(BM_EnergyChange<k::interaction_energy_change_serial>)
    ->Name("energy_change/serial")
    ->RangeMultiplier(4)
    ->Range(256, 4096);
BENCHMARK(BM_EnergyChange<k::interaction_energy_change_parallel>)
    ->Name("energy_change/parallel")
    ->RangeMultiplier(4)
    ->Range(256, 4096)
    ->UseRealTime();

BENCHMARK_MAIN();
