// Serial reference against the OpenMP kernels. Pass --benchmark_filter to
// pick a kernel; OMP_NUM_THREADS sets the parallel width.

#include <benchmark/benchmark.h>

#include <random>

#include "amrsl/fixtures.hpp"
#include "amrsl/mining.hpp"
#include "amrsl/oracle.hpp"
#include "amrsl/smatch.hpp"

using namespace amrsl;

namespace {

struct SmatchPairs {
  std::vector<AmrGraph> test, gold;
};

const SmatchPairs& smatch_pairs() {
  static const SmatchPairs pairs = [] {
    SmatchPairs p;
    std::mt19937_64 rng(1);
    for (int i = 0; i < 400; ++i) {
      GraphFixtureOptions opt;
      opt.variables = 6 + draw(rng, 14);
      opt.extra_edges = draw(rng, 4);
      const auto g = random_graph(rng, opt);
      p.gold.push_back(g);
      p.test.push_back(mutate_graph(mutate_graph(g, rng), rng));
    }
    return p;
  }();
  return pairs;
}

const Corpus& trees() {
  static const Corpus c = random_tree_corpus(2000, 2);
  return c;
}

std::vector<TrainingExample> planted() {
  const auto corpus = random_tree_corpus(300, 3);
  std::mt19937_64 rng(4);
  std::vector<TrainingExample> out;
  for (const auto& rec : corpus) {
    auto good = oracle_actions(rec.graph, rec.sentence, *rec.alignment);
    out.push_back({rec.sentence, rec.graph, plant_suboptimal(rec.sentence, good, rng), {}});
  }
  return out;
}

void BM_CorpusSmatch_Serial(benchmark::State& state) {
  const auto& p = smatch_pairs();
  for (auto _ : state) benchmark::DoNotOptimize(corpus_smatch_serial(p.test, p.gold).total.matched);
}
void BM_CorpusSmatch_Parallel(benchmark::State& state) {
  const auto& p = smatch_pairs();
  for (auto _ : state) benchmark::DoNotOptimize(corpus_smatch(p.test, p.gold).total.matched);
}

void BM_OracleCoverage_Serial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_coverage_serial(trees()).total.matched);
}
void BM_OracleCoverage_Parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_coverage(trees()).total.matched);
}

template <bool Parallel>
void BM_MineEpoch(benchmark::State& state) {
  const auto base = planted();
  PerturbationProposer proposer(collect_roles(base));
  MiningConfig cfg;
  cfg.samples_per_sentence = 4;
  for (auto _ : state) {
    state.PauseTiming();
    auto corpus = base;
    state.ResumeTiming();
    const auto st = Parallel ? mine_epoch(corpus, proposer, cfg) : mine_epoch_serial(corpus, proposer, cfg);
    benchmark::DoNotOptimize(st.replacements);
  }
}

}  // namespace

BENCHMARK(BM_CorpusSmatch_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorpusSmatch_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OracleCoverage_Serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleCoverage_Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_TEMPLATE(BM_MineEpoch, false)->Name("BM_MineEpoch_Serial")->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_MineEpoch, true)->Name("BM_MineEpoch_Parallel")->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
