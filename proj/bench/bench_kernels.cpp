#include <benchmark/benchmark.h>

#include <random>

#include "kstab/integration.hpp"
#include "kstab/io.hpp"
#include "kstab/random.hpp"
#include "kstab/scan.hpp"

using namespace kstab;

namespace {

PLFunction sample_pl(const Polytope& p) {
  std::mt19937_64 rng(1);
  return random_convex_pl(p, rng, 3, 3);
}

template <LatticeSum (*Sum)(const Polytope&, long, const LatticeWeight&, std::uint64_t)>
void BM_lattice(benchmark::State& state) {
  const Polytope p = catalog("cp2_2blowup").polytope;
  const PLFunction u = sample_pl(p);
  const auto w = [&](const Vec& x) { return u.value(x); };
  for (auto _ : state) benchmark::DoNotOptimize(Sum(p, state.range(0), w, kDefaultCellBudget));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lattice_points(p, state.range(0)).size()));
}

template <ScanResult (*Scan)(const Polytope&, const ExtremalData&, const ScanConfig&)>
void BM_scan(benchmark::State& state) {
  const Polytope p = catalog("cp2_2blowup").polytope;
  const ExtremalData e = extremal_field(p);
  const ScanConfig cfg{static_cast<int>(state.range(0)), 20, 1};
  for (auto _ : state) benchmark::DoNotOptimize(Scan(p, e, cfg));
}

}  // namespace

BENCHMARK(BM_lattice<lattice_sum_serial>)->Name("lattice_sum/serial")->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lattice<lattice_sum>)->Name("lattice_sum/openmp")->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan<scan_serial>)->Name("scan/serial")->Arg(36)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan<scan>)->Name("scan/openmp")->Arg(36)->Arg(120)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
