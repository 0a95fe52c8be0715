#include <benchmark/benchmark.h>

#include "pairtab/io.hpp"
#include "pairtab/markov.hpp"
#include "pairtab/mle.hpp"
#include "pairtab/sampler.hpp"
#include "pairtab/stats.hpp"

namespace {

using namespace pairtab;

const PairTable& data() {
  static const PairTable t = parse_table_file(std::string(PAIRTAB_DATA_DIR) +
                                              "/lymphocyte_etca.csv");
  return t;
}

void BM_Fit(benchmark::State& state) {
  const PairTable& t = data();
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(ModelSpec::no_proximity(t.n()), t));
  }
}
BENCHMARK(BM_Fit);

void BM_GenerateBasis(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_basis(22));
  }
}
BENCHMARK(BM_GenerateBasis);

void BM_ChainSteps(benchmark::State& state) {
  const PairTable& t = data();
  const MarkovBasis basis = generate_basis(t.n());
  const FittedModel fm = fit(ModelSpec::no_proximity(t.n()), t);
  ChainConfig cfg;
  cfg.seed = 1;
  cfg.burn_in = 0;
  cfg.thinning = static_cast<std::int64_t>(state.range(0));
  cfg.samples = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_chain(t, basis, cfg, [&](const PairTable& s) {
      return chi_square_stat(s, fm.fitted);
    }));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ChainSteps)->Arg(100000);

void BM_NormalForm(benchmark::State& state) {
  const PairTable& t = data();
  for (auto _ : state) {
    benchmark::DoNotOptimize(normal_form(t));
  }
}
BENCHMARK(BM_NormalForm);

void BM_PairScan(benchmark::State& state) {
  const PairTable& t = data();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_scan(t));
  }
}
BENCHMARK(BM_PairScan);

}  // namespace

BENCHMARK_MAIN();
