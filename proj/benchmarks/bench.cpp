#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "generators.hpp"
#include "spanbridge/easyproject.hpp"
#include "spanbridge/fuzzy.hpp"
#include "spanbridge/markers.hpp"
#include "spanbridge/metrics.hpp"
#include "spanbridge/tokens.hpp"

using namespace spanbridge;

namespace {

std::vector<AnnotatedSentence> sample(std::size_t n) {
  std::mt19937_64 rng(1);
  return gen::corpus(rng, n);
}

void BM_FuzzyRatio(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::u32string a(n, U'a'), b(n, U'a');
  for (auto& c : a) c = static_cast<char32_t>(U'a' + gen::pick(rng, 6));
  for (auto& c : b) c = static_cast<char32_t>(U'a' + gen::pick(rng, 6));
  for (auto _ : state) benchmark::DoNotOptimize(fuzzy_ratio(a, b));
}
BENCHMARK(BM_FuzzyRatio)->Arg(8)->Arg(32)->Arg(128);

void BM_InsertExtract(benchmark::State& state) {
  const auto corpus = sample(256);
  MarkerScheme scheme;
  scheme.kind = static_cast<MarkerKind>(state.range(0));
  for (auto _ : state) {
    for (const auto& s : corpus) {
      const MarkedText m = insert_markers(s, scheme);
      benchmark::DoNotOptimize(extract_markers(m.text, scheme, m.marker_map));
    }
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_InsertExtract)
    ->Arg(static_cast<int>(MarkerKind::SquareBracket))
    ->Arg(static_cast<int>(MarkerKind::XmlIndexed))
    ->Arg(static_cast<int>(MarkerKind::Placeholder));

void BM_IdentityProjectCorpus(benchmark::State& state) {
  const auto corpus = sample(1000);
  IdentityBackend identity;
  ProjectionConfig cfg;
  cfg.jobs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(project_corpus(corpus, identity, cfg));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * corpus.size()));
}
BENCHMARK(BM_IdentityProjectCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CorpusBleu(benchmark::State& state) {
  std::vector<TokenList> hyps, refs;
  for (const auto& s : sample(1000)) {
    refs.push_back(split_whitespace(s.text()));
    hyps.push_back(refs.back());
    std::reverse(hyps.back().begin(), hyps.back().end());
  }
  for (auto _ : state) benchmark::DoNotOptimize(corpus_bleu(hyps, refs));
}
BENCHMARK(BM_CorpusBleu)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
