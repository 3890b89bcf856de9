#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spanbridge/annotation.hpp"
#include "spanbridge/projection.hpp"

namespace spanbridge {

/// projected / total. Throws std::domain_error when total == 0.
double projection_rate(const ProjectionReport& report);

struct BleuConfig {
  std::size_t max_n = 4;
};

struct BleuScore {
  double score = 0.0;
  double brevity_penalty = 0.0;
  std::vector<double> precisions;  // per order; NaN for orders with no hypothesis n-grams
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

using TokenList = std::vector<std::string>;

/// Corpus BLEU with one reference per hypothesis, uniform weights over the
/// orders that have hypothesis n-grams. Throws ContractError on a length mismatch.
BleuScore compute_bleu(std::span<const TokenList> hyps, std::span<const TokenList> refs,
                       const BleuConfig& config = {});

double corpus_bleu(std::span<const TokenList> hyps, std::span<const TokenList> refs,
                   const BleuConfig& config = {});

struct CorpusStats {
  std::size_t n_sentences = 0;
  std::size_t n_tokens = 0;
  std::size_t n_spans = 0;
  double avg_tokens_per_sentence = 0.0;
  double avg_spans_per_sentence = 0.0;
  std::map<std::string, std::size_t> label_histogram;
};

/// Throws std::domain_error on an empty corpus.
CorpusStats corpus_stats(std::span<const AnnotatedSentence> sentences);

std::string stats_to_json(const CorpusStats& stats);
std::string bleu_to_json(const BleuScore& score);

}  // namespace spanbridge
