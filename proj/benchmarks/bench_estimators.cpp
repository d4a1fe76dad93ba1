#include <benchmark/benchmark.h>

#include <cstddef>
#include <map>

#include <netcent/directed.hpp>
#include <netcent/harness.hpp>
#include <netcent/multicomponent.hpp>
#include <netcent/network.hpp>

using namespace netcent;

namespace {

const Network& gnp_net(std::size_t n) {
  static std::map<std::size_t, Network> cache;
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, random_gnp(n, 0.1, 42)).first;
  return it->second;
}

void bm_fit_degree(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_degree(net));
}
BENCHMARK(bm_fit_degree)->Arg(50)->Arg(200);

void bm_fit_eigenvector(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_eigenvector(net));
}
BENCHMARK(bm_fit_eigenvector)->Arg(50)->Arg(200);

void bm_fit_katz(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_katz(net));
}
BENCHMARK(bm_fit_katz)->Arg(50)->Arg(200);

void bm_fit_multicomponent(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_multicomponent(net, McStrategy::fixed(2)));
}
BENCHMARK(bm_fit_multicomponent)->Arg(50)->Arg(200);

void bm_greedy_order(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  const SpectralBasis basis =
      symmetric_eigs(net.matrix(), static_cast<std::size_t>(net.size()));
  for (auto _ : state) benchmark::DoNotOptimize(greedy_offdiag_order(basis));
}
BENCHMARK(bm_greedy_order)->Arg(50)->Arg(200);

void bm_uc_closed(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  const EstimatorFit fit = fit_eigenvector(net);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        unique_contribution(fit, net, UcMethod::closed_form));
}
BENCHMARK(bm_uc_closed)->Arg(50)->Arg(200);

void bm_uc_oracle(benchmark::State& state) {
  const Network& net = gnp_net(static_cast<std::size_t>(state.range(0)));
  const EstimatorFit fit = fit_eigenvector(net);
  for (auto _ : state)
    benchmark::DoNotOptimize(unique_contribution(fit, net, UcMethod::oracle));
}
BENCHMARK(bm_uc_oracle)->Arg(50)->Arg(200);

void bm_fit_hits(benchmark::State& state) {
  static const Network net =
      random_gnp(static_cast<std::size_t>(200), 0.1, 43, true);
  for (auto _ : state) benchmark::DoNotOptimize(fit_hits(net));
}
BENCHMARK(bm_fit_hits);

}  // namespace

BENCHMARK_MAIN();
