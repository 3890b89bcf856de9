#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace spanbridge {

/// A labeled region of a sentence, in codepoint offsets [start, end).
struct LabeledSpan {
  std::size_t id = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string label;

  std::size_t length() const noexcept { return end - start; }
  friend bool operator==(const LabeledSpan&, const LabeledSpan&) = default;
};

/// A typed edge between two spans of the same sentence (relation or event argument role).
struct RelationLink {
  std::string kind;
  std::size_t head_span_id = 0;
  std::size_t tail_span_id = 0;

  friend bool operator==(const RelationLink&, const RelationLink&) = default;
};

using Meta = std::map<std::string, std::string>;

bool is_valid_label(std::string_view label) noexcept;

/// Sentence text plus its flat span annotations. Immutable once built; the
/// constructor enforces every invariant and throws ValidationError otherwise:
///  - text is valid UTF-8
///  - 0 <= start < end <= length(text) for every span
///  - spans sorted by start, pairwise non-overlapping, ids 0..n-1 in order
///  - labels non-empty without whitespace
///  - relation endpoints name existing span ids
class AnnotatedSentence {
 public:
  AnnotatedSentence() = default;
  AnnotatedSentence(std::string text, std::vector<LabeledSpan> spans, Meta meta = {},
                    std::vector<RelationLink> relations = {});

  const std::string& text() const noexcept { return text_; }
  const std::vector<LabeledSpan>& spans() const noexcept { return spans_; }
  const Meta& meta() const noexcept { return meta_; }
  const std::vector<RelationLink>& relations() const noexcept { return relations_; }

  /// Text length in codepoints.
  std::size_t length() const noexcept { return length_; }

  std::string span_text(const LabeledSpan& span) const;
  std::vector<std::string> span_texts() const;

  friend bool operator==(const AnnotatedSentence& a, const AnnotatedSentence& b) {
    return a.text_ == b.text_ && a.spans_ == b.spans_ && a.meta_ == b.meta_ &&
           a.relations_ == b.relations_;
  }

 private:
  std::string text_;
  std::vector<LabeledSpan> spans_;
  Meta meta_;
  std::vector<RelationLink> relations_;
  std::size_t length_ = 0;
};

/// Sorts loose spans by start, renumbers ids in document order, and rewrites
/// relation endpoints (given as indices into `spans`) to the new ids.
AnnotatedSentence make_sentence(std::string text, std::vector<LabeledSpan> spans, Meta meta = {},
                                std::vector<RelationLink> relations = {});

/// Extractive QA item; `answer.label` is always "ANSWER".
struct QaExample {
  std::string id;
  std::string title;
  std::string question;
  std::string context;
  LabeledSpan answer;

  friend bool operator==(const QaExample&, const QaExample&) = default;
};

inline constexpr std::string_view kAnswerLabel = "ANSWER";

/// Throws ValidationError when the answer offsets are invalid for the context.
void validate(const QaExample& example);

std::string answer_text(const QaExample& example);

}  // namespace spanbridge
