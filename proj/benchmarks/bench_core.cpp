#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "signphon/coarticulation.hpp"
#include "signphon/corpus.hpp"
#include "signphon/inventory.hpp"
#include "signphon/lexicon.hpp"
#include "signphon/reranker.hpp"
#include "signphon/transitions.hpp"

using namespace signphon;

namespace {

std::string data_path(const char* rel) {
  return std::string(SIGNPHON_DATA_DIR) + "/" + rel;
}

const Inventory& inv() {
  static Inventory i = Inventory::load_file(data_path("inventory.tsv"));
  return i;
}

const TransitionTable& stats() {
  static TransitionTable t =
      load_stats_file(data_path("fixtures/stats_top3.json"), inv());
  return t;
}

void bm_distance(benchmark::State& state) {
  const Inventory& i = inv();
  const std::size_t n = i.size();
  std::size_t a = 0;
  std::size_t b = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(i.distance(static_cast<HandshapeIndex>(a),
                                        static_cast<HandshapeIndex>(b)));
    a = (a + 1) % n;
    b = (b + 7) % n;
  }
}
BENCHMARK(bm_distance);

void bm_cond_prob(benchmark::State& state) {
  const TransitionTable& t = stats();
  for (auto _ : state) {
    benchmark::DoNotOptimize(cond_prob(t, "B-L", "bent-B-L", inv(), {0.1}));
  }
}
BENCHMARK(bm_cond_prob);

void bm_joint_prior(benchmark::State& state) {
  const TransitionTable& t = stats();
  for (auto _ : state) {
    JointPrior p = joint_prior(t, inv(), {0.1});
    benchmark::DoNotOptimize(p.prob("B-L", "B-L"));
  }
}
BENCHMARK(bm_joint_prior);

void bm_fit_corpus(benchmark::State& state) {
  std::vector<Utterance> corpus =
      parse_corpus_file(data_path("fixtures/coartic_corpus.jsonl"), inv());
  std::vector<const SignToken*> tokens =
      filter_tokens(corpus, ExclusionPolicy{}, FilterPurpose::Statistics);
  for (auto _ : state) {
    TransitionTable t = fit(tokens, inv());
    benchmark::DoNotOptimize(t.total());
  }
}
BENCHMARK(bm_fit_corpus);

void bm_rerank(benchmark::State& state) {
  JointPrior prior = joint_prior(stats(), inv(), {0.1});
  auto samples = synth_generate(prior, NoiseModel{0.5, 0.5, 99}, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rerank(samples[i].obs, prior, 1.0));
    i = (i + 1) % samples.size();
  }
}
BENCHMARK(bm_rerank);

void bm_scan(benchmark::State& state) {
  Lexicon lex =
      Lexicon::parse_file(data_path("fixtures/coartic_lexicon.tsv"), inv());
  std::vector<Utterance> corpus =
      parse_corpus_file(data_path("fixtures/coartic_corpus.jsonl"), inv());
  for (auto _ : state) {
    PrevalenceReport rep = scan(corpus, lex, inv());
    benchmark::DoNotOptimize(rep.total_coarticulated);
  }
}
BENCHMARK(bm_scan);

}  // namespace

BENCHMARK_MAIN();
