#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spanbridge/annotation.hpp"
#include "spanbridge/projection.hpp"
#include "spanbridge/tokens.hpp"

namespace spanbridge {

/// Source-token -> target-token links, 0-based.
struct Alignment {
  std::set<std::pair<std::size_t, std::size_t>> links;

  friend bool operator==(const Alignment&, const Alignment&) = default;
};

/// Parses a Pharaoh line ("0-0 1-2 ..."). Throws ParseError naming the 1-based
/// pair position on malformed pairs or indices outside the sentence lengths.
Alignment parse_pharaoh(std::string_view line, std::size_t n_src, std::size_t n_tgt);

std::string emit_pharaoh(const Alignment& alignment);

struct AlignedPair {
  std::vector<std::string> src_tokens;
  std::vector<std::string> tgt_tokens;
  Alignment alignment;
};

/// Min/max coverage of the target tokens aligned to [span.begin, span.end);
/// nullopt when no token of the span is aligned.
std::optional<TokenRange> project_span_aligned(TokenRange span, const Alignment& alignment);

/// Throws ContractError if the sentence does not tokenize to pair.src_tokens or
/// a span does not sit on token boundaries.
ProjectionOutcome project_sentence_aligned(const AnnotatedSentence& sentence,
                                           const AlignedPair& pair);

CorpusProjection project_corpus_aligned(std::span<const AnnotatedSentence> sentences,
                                        std::span<const AlignedPair> pairs, std::size_t jobs = 1);

}  // namespace spanbridge
