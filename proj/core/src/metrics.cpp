#include "spanbridge/metrics.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spanbridge/error.hpp"
#include "spanbridge/tokens.hpp"

namespace spanbridge {

using nlohmann::json;

double projection_rate(const ProjectionReport& report) {
  if (report.total == 0) throw std::domain_error("projection rate undefined for an empty report");
  return static_cast<double>(report.projected) / static_cast<double>(report.total);
}

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const TokenList& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace

BleuScore compute_bleu(std::span<const TokenList> hyps, std::span<const TokenList> refs,
                       const BleuConfig& config) {
  if (hyps.size() != refs.size()) {
    throw ContractError("BLEU needs one reference per hypothesis (" + std::to_string(hyps.size()) +
                        " vs " + std::to_string(refs.size()) + ")");
  }
  if (hyps.empty()) throw ContractError("BLEU needs at least one sentence");
  if (config.max_n == 0) throw ValidationError("BLEU max_n must be >= 1");

  std::vector<std::size_t> matches(config.max_n, 0);
  std::vector<std::size_t> totals(config.max_n, 0);
  BleuScore score;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    score.hyp_length += hyps[s].size();
    score.ref_length += refs[s].size();
    for (std::size_t n = 1; n <= config.max_n; ++n) {
      const NgramCounts hyp = count_ngrams(hyps[s], n);
      const NgramCounts ref = count_ngrams(refs[s], n);
      for (const auto& [gram, count] : hyp) {
        totals[n - 1] += count;
        if (const auto it = ref.find(gram); it != ref.end()) {
          matches[n - 1] += std::min(count, it->second);
        }
      }
    }
  }

  const double c = static_cast<double>(score.hyp_length);
  const double r = static_cast<double>(score.ref_length);
  score.brevity_penalty = score.hyp_length == 0 ? 0.0 : (c > r ? 1.0 : std::exp(1.0 - r / c));

  double log_sum = 0.0;
  std::size_t defined = 0;
  bool zero = false;
  for (std::size_t n = 0; n < config.max_n; ++n) {
    if (totals[n] == 0) {
      score.precisions.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double p = static_cast<double>(matches[n]) / static_cast<double>(totals[n]);
    score.precisions.push_back(p);
    ++defined;
    if (matches[n] == 0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  if (defined == 0 || zero) {
    score.score = 0.0;
  } else {
    score.score = score.brevity_penalty * std::exp(log_sum / static_cast<double>(defined));
  }
  return score;
}

double corpus_bleu(std::span<const TokenList> hyps, std::span<const TokenList> refs,
                   const BleuConfig& config) {
  return compute_bleu(hyps, refs, config).score;
}

CorpusStats corpus_stats(std::span<const AnnotatedSentence> sentences) {
  if (sentences.empty()) throw std::domain_error("corpus statistics need at least one sentence");
  CorpusStats stats;
  stats.n_sentences = sentences.size();
  for (const AnnotatedSentence& sentence : sentences) {
    stats.n_tokens += split_whitespace(sentence.text()).size();
    stats.n_spans += sentence.spans().size();
    for (const LabeledSpan& span : sentence.spans()) ++stats.label_histogram[span.label];
  }
  const double n = static_cast<double>(stats.n_sentences);
  stats.avg_tokens_per_sentence = static_cast<double>(stats.n_tokens) / n;
  stats.avg_spans_per_sentence = static_cast<double>(stats.n_spans) / n;
  return stats;
}

std::string stats_to_json(const CorpusStats& stats) {
  json doc = {{"n_sentences", stats.n_sentences},
              {"n_tokens", stats.n_tokens},
              {"n_spans", stats.n_spans},
              {"avg_tokens_per_sentence", stats.avg_tokens_per_sentence},
              {"avg_spans_per_sentence", stats.avg_spans_per_sentence},
              {"label_histogram", json::object()}};
  for (const auto& [label, count] : stats.label_histogram) doc["label_histogram"][label] = count;
  return doc.dump(2);
}

std::string bleu_to_json(const BleuScore& score) {
  json precisions = json::array();
  for (double p : score.precisions) precisions.push_back(std::isnan(p) ? json(nullptr) : json(p));
  const json doc = {{"bleu", score.score},
                    {"brevity_penalty", score.brevity_penalty},
                    {"precisions", std::move(precisions)},
                    {"hyp_length", score.hyp_length},
                    {"ref_length", score.ref_length}};
  return doc.dump(2);
}

}  // namespace spanbridge
