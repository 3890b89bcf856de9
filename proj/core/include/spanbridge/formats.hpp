#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spanbridge/annotation.hpp"
#include "spanbridge/error.hpp"

namespace spanbridge {

/// How an I-X tag that does not continue an X run is treated.
enum class BioMode {
  Strict,   // error
  Lenient,  // read as B-X
};

/// Thrown by spans_from_bio; `token_index()` is 0-based.
class BioError : public ParseError {
 public:
  BioError(const std::string& message, std::size_t token_index)
      : ParseError(message), token_index_(token_index) {}
  std::size_t token_index() const noexcept { return token_index_; }

 private:
  std::size_t token_index_;
};

/// Spans over the single-space-joined token text, ids in order.
std::vector<LabeledSpan> spans_from_bio(std::span<const std::string> tokens,
                                        std::span<const std::string> tags,
                                        BioMode mode = BioMode::Strict);

/// BIO2 tags for spans that sit on token boundaries of the joined text.
std::vector<std::string> bio_from_spans(std::span<const std::string> tokens,
                                        std::span<const LabeledSpan> spans);

// CoNLL: "token<TAB>tag" lines, blank line between sentences, -DOCSTART- skipped.
std::vector<AnnotatedSentence> parse_conll(std::string_view text, BioMode mode = BioMode::Strict);
std::string emit_conll(std::span<const AnnotatedSentence> sentences);

// Span-JSON lines: {"text": ..., "spans": [{"start","end","label"}], "meta": {...}, "relations": [...]}.
// Relation endpoints index the "spans" array of the same line.
AnnotatedSentence parse_span_json(std::string_view line);
std::string emit_span_json(const AnnotatedSentence& sentence);
std::vector<AnnotatedSentence> parse_span_jsonl(std::string_view text);
std::string emit_span_jsonl(std::span<const AnnotatedSentence> sentences);

// SQuAD v1.1 layout. Examples sharing consecutive title/context regroup into
// the same article/paragraph on emission; keys are emitted in alphabetical order.
struct SquadCorpus {
  std::string version;
  std::vector<QaExample> examples;

  friend bool operator==(const SquadCorpus&, const SquadCorpus&) = default;
};

SquadCorpus parse_squad(std::string_view json);
std::string emit_squad(const SquadCorpus& corpus);

}  // namespace spanbridge
