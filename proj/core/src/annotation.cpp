#include "spanbridge/annotation.hpp"

#include <algorithm>
#include <numeric>

#include "spanbridge/error.hpp"
#include "spanbridge/utf8.hpp"

namespace spanbridge {

bool is_valid_label(std::string_view label) noexcept {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  });
}

AnnotatedSentence::AnnotatedSentence(std::string text, std::vector<LabeledSpan> spans, Meta meta,
                                     std::vector<RelationLink> relations)
    : text_(std::move(text)),
      spans_(std::move(spans)),
      meta_(std::move(meta)),
      relations_(std::move(relations)) {
  if (!utf8::is_valid(text_)) throw ValidationError("sentence text is not valid UTF-8");
  length_ = utf8::length(text_);

  for (std::size_t i = 0; i < spans_.size(); ++i) {
    const LabeledSpan& span = spans_[i];
    const std::string where = "span " + std::to_string(i);
    if (span.id != i) {
      throw ValidationError(where + ": id " + std::to_string(span.id) + " out of document order");
    }
    if (span.start >= span.end || span.end > length_) {
      throw ValidationError(where + ": invalid range [" + std::to_string(span.start) + "," +
                            std::to_string(span.end) + ") for text of length " +
                            std::to_string(length_));
    }
    if (!is_valid_label(span.label)) {
      throw ValidationError(where + ": label must be non-empty without whitespace");
    }
    if (i > 0) {
      const LabeledSpan& prev = spans_[i - 1];
      if (span.start < prev.start) throw ValidationError(where + ": spans not sorted by start");
      if (span.start < prev.end) throw ValidationError(where + ": overlaps previous span");
    }
  }
  for (const RelationLink& link : relations_) {
    if (link.head_span_id >= spans_.size() || link.tail_span_id >= spans_.size()) {
      throw ValidationError("relation '" + link.kind + "' references a missing span");
    }
  }
}

std::string AnnotatedSentence::span_text(const LabeledSpan& span) const {
  return utf8::substr(text_, span.start, span.end);
}

std::vector<std::string> AnnotatedSentence::span_texts() const {
  const std::u32string cps = utf8::decode(text_);
  std::vector<std::string> out;
  out.reserve(spans_.size());
  for (const LabeledSpan& span : spans_) {
    out.push_back(utf8::encode(std::u32string_view(cps).substr(span.start, span.length())));
  }
  return out;
}

AnnotatedSentence make_sentence(std::string text, std::vector<LabeledSpan> spans, Meta meta,
                                std::vector<RelationLink> relations) {
  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spans[a].start < spans[b].start;
  });
  std::vector<std::size_t> new_id(spans.size());
  std::vector<LabeledSpan> sorted;
  sorted.reserve(spans.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    LabeledSpan span = std::move(spans[order[rank]]);
    span.id = rank;
    new_id[order[rank]] = rank;
    sorted.push_back(std::move(span));
  }
  for (RelationLink& link : relations) {
    if (link.head_span_id >= new_id.size() || link.tail_span_id >= new_id.size()) {
      throw ValidationError("relation '" + link.kind + "' references a missing span");
    }
    link.head_span_id = new_id[link.head_span_id];
    link.tail_span_id = new_id[link.tail_span_id];
  }
  return AnnotatedSentence(std::move(text), std::move(sorted), std::move(meta),
                           std::move(relations));
}

void validate(const QaExample& example) {
  if (!utf8::is_valid(example.context) || !utf8::is_valid(example.question)) {
    throw ValidationError("example " + example.id + ": text is not valid UTF-8");
  }
  const std::size_t n = utf8::length(example.context);
  const LabeledSpan& a = example.answer;
  if (a.start >= a.end || a.end > n) {
    throw ValidationError("example " + example.id + ": answer range [" + std::to_string(a.start) +
                          "," + std::to_string(a.end) + ") invalid for context of length " +
                          std::to_string(n));
  }
  if (a.label != kAnswerLabel) {
    throw ValidationError("example " + example.id + ": answer label must be ANSWER");
  }
}

std::string answer_text(const QaExample& example) {
  return utf8::substr(example.context, example.answer.start, example.answer.end);
}

}  // namespace spanbridge
