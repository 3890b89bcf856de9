#include "spanbridge/alignproject.hpp"

#include <algorithm>
#include <charconv>

#include "parallel.hpp"
#include "spanbridge/error.hpp"
#include "spanbridge/utf8.hpp"

namespace spanbridge {
namespace {

std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

Alignment parse_pharaoh(std::string_view line, std::size_t n_src, std::size_t n_tgt) {
  Alignment alignment;
  std::size_t position = 0;
  for (const std::string& pair : split_whitespace(line)) {
    ++position;
    const std::string where = "alignment pair " + std::to_string(position) + " '" + pair + "'";
    const std::size_t dash = pair.find('-');
    if (dash == std::string::npos) throw ParseError(where + ": expected i-j");
    const auto i = parse_index(std::string_view(pair).substr(0, dash));
    const auto j = parse_index(std::string_view(pair).substr(dash + 1));
    if (!i || !j) throw ParseError(where + ": expected i-j");
    if (*i >= n_src || *j >= n_tgt) {
      throw ParseError(where + ": index out of range for " + std::to_string(n_src) + " source / " +
                       std::to_string(n_tgt) + " target tokens");
    }
    alignment.links.emplace(*i, *j);
  }
  return alignment;
}

std::string emit_pharaoh(const Alignment& alignment) {
  std::string out;
  for (const auto& [i, j] : alignment.links) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + "-" + std::to_string(j);
  }
  return out;
}

std::optional<TokenRange> project_span_aligned(TokenRange span, const Alignment& alignment) {
  std::optional<TokenRange> target;
  // Links are ordered by source index, so only the span's slice is visited.
  for (auto it = alignment.links.lower_bound({span.begin, 0});
       it != alignment.links.end() && it->first < span.end; ++it) {
    const std::size_t j = it->second;
    if (!target) {
      target = TokenRange{j, j + 1};
    } else {
      target->begin = std::min(target->begin, j);
      target->end = std::max(target->end, j + 1);
    }
  }
  return target;
}

ProjectionOutcome project_sentence_aligned(const AnnotatedSentence& sentence,
                                           const AlignedPair& pair) {
  if (split_whitespace(sentence.text()) != pair.src_tokens ||
      join_tokens(pair.src_tokens) != sentence.text()) {
    throw ContractError("sentence text does not match the aligned source tokens");
  }
  for (const auto& [i, j] : pair.alignment.links) {
    if (i >= pair.src_tokens.size() || j >= pair.tgt_tokens.size()) {
      throw ContractError("alignment link " + std::to_string(i) + "-" + std::to_string(j) +
                          " outside the sentence pair");
    }
  }
  const std::vector<CodepointRange> src_offsets = token_offsets(pair.src_tokens);
  const std::vector<CodepointRange> tgt_offsets = token_offsets(pair.tgt_tokens);

  std::vector<std::string> diagnostics;
  std::vector<TokenRange> ranges;
  for (const LabeledSpan& span : sentence.spans()) {
    const auto src_range = token_range_for(src_offsets, span.start, span.end);
    if (!src_range) {
      throw ContractError("span " + std::to_string(span.id) + " is not on token boundaries");
    }
    const auto tgt_range = project_span_aligned(*src_range, pair.alignment);
    if (!tgt_range) {
      return ProjectionOutcome::filtered(reason::kUnprojectable,
                                         "span " + std::to_string(span.id) + " has no aligned tokens");
    }
    std::size_t unaligned = 0;
    for (std::size_t i = src_range->begin; i < src_range->end; ++i) {
      const auto it = pair.alignment.links.lower_bound({i, 0});
      if (it == pair.alignment.links.end() || it->first != i) ++unaligned;
    }
    if (unaligned > 0) {
      diagnostics.push_back("boundary-risk: span " + std::to_string(span.id) + " has " +
                            std::to_string(unaligned) + " unaligned source token(s)");
    }
    ranges.push_back(*tgt_range);
  }

  for (std::size_t a = 0; a < ranges.size(); ++a) {
    for (std::size_t b = a + 1; b < ranges.size(); ++b) {
      if (ranges[a].begin < ranges[b].end && ranges[b].begin < ranges[a].end) {
        return ProjectionOutcome::filtered(reason::kOverlap,
                                           "spans " + std::to_string(a) + " and " +
                                               std::to_string(b) + " project onto overlapping tokens");
      }
    }
  }

  std::vector<LabeledSpan> target;
  std::vector<std::size_t> source_ids;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    target.push_back({k, tgt_offsets[ranges[k].begin].start, tgt_offsets[ranges[k].end - 1].end,
                      sentence.spans()[k].label});
    source_ids.push_back(k);
  }
  ProjectionOutcome out = ProjectionOutcome::projected(
      build_target_sentence(sentence, join_tokens(pair.tgt_tokens), std::move(target), source_ids));
  out.diagnostics = std::move(diagnostics);
  return out;
}

CorpusProjection project_corpus_aligned(std::span<const AnnotatedSentence> sentences,
                                        std::span<const AlignedPair> pairs, std::size_t jobs) {
  if (sentences.size() != pairs.size()) {
    throw ContractError(std::to_string(sentences.size()) + " sentences but " +
                        std::to_string(pairs.size()) + " aligned pairs");
  }
  CorpusProjection result;
  result.outcomes.resize(sentences.size());
  detail::parallel_for(sentences.size(), jobs, [&](std::size_t i) {
    result.outcomes[i] = project_sentence_aligned(sentences[i], pairs[i]);
  });
  for (const ProjectionOutcome& outcome : result.outcomes) {
    result.report.add(outcome.status, outcome.reason, outcome.low_confidence);
    if (outcome.sentence) result.sentences.push_back(*outcome.sentence);
  }
  return result;
}

}  // namespace spanbridge
