#include "spanbridge/easyproject.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "parallel.hpp"
#include "spanbridge/error.hpp"
#include "spanbridge/fuzzy.hpp"
#include "spanbridge/utf8.hpp"

namespace spanbridge {

void validate(const MatcherConfig& config) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) {
    throw ValidationError("matcher threshold must lie in [0, 1]");
  }
}

std::optional<LabelAssignment> assign_labels_fuzzy(std::span<const std::string> bracketed,
                                                   std::span<const Candidate> candidates,
                                                   const MatcherConfig& config) {
  if (bracketed.size() != candidates.size()) {
    throw ContractError("label assignment needs as many candidates (" +
                        std::to_string(candidates.size()) + ") as bracketed spans (" +
                        std::to_string(bracketed.size()) + ")");
  }
  validate(config);
  const std::size_t n = bracketed.size();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  LabelAssignment result;
  result.candidate_for_span.assign(n, kNone);

  if (config.mode == MatchMode::Sequential) {
    std::iota(result.candidate_for_span.begin(), result.candidate_for_span.end(), 0);
  } else {
    const auto prepare = [&](const std::string& s) {
      return utf8::decode(config.nfc_normalize ? utf8::nfc(s) : s);
    };
    std::vector<std::u32string> spans;
    std::vector<std::u32string> mentions;
    for (const std::string& s : bracketed) spans.push_back(prepare(s));
    for (const Candidate& c : candidates) mentions.push_back(prepare(c.mention));

    // (ratio, candidate, span); highest ratio first, ties in source order.
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(n * n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t s = 0; s < n; ++s) pairs.emplace_back(fuzzy_ratio(spans[s], mentions[c]), c, s);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
      if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
      if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
      return std::get<2>(x) < std::get<2>(y);
    });

    std::vector<bool> used(n, false);
    for (const auto& [ratio, c, s] : pairs) {
      if (ratio <= config.threshold) break;
      if (used[c] || result.candidate_for_span[s] != kNone) continue;
      used[c] = true;
      result.candidate_for_span[s] = c;
    }

    const bool complete = std::none_of(result.candidate_for_span.begin(),
                                       result.candidate_for_span.end(),
                                       [](std::size_t c) { return c == kNone; });
    if (!complete) {
      if (config.on_no_match == NoMatchPolicy::DropSentence) return std::nullopt;
      result.low_confidence = true;
      std::size_t next_candidate = 0;
      for (std::size_t& slot : result.candidate_for_span) {
        if (slot != kNone) continue;
        while (used[next_candidate]) ++next_candidate;
        used[next_candidate] = true;
        slot = next_candidate;
      }
    }
  }

  for (std::size_t c : result.candidate_for_span) result.labels.push_back(candidates[c].label);
  return result;
}

namespace {

bool uses_span_translations(MarkerKind kind) { return kind != MarkerKind::XmlIndexed; }

// Marks one sentence and appends its translate items to `items`.
struct Prepared {
  std::optional<ProjectionOutcome> early;
  MarkedText marked;
  std::size_t first_item = 0;
  std::size_t item_count = 0;
};

Prepared prepare(const AnnotatedSentence& sentence, const ProjectionConfig& config,
                 std::vector<std::string>& items) {
  Prepared p;
  if (sentence.text().empty()) {
    p.early = ProjectionOutcome::projected(sentence);
    return p;
  }
  try {
    p.marked = insert_markers(sentence, config.scheme);
  } catch (const PreexistingMarkerError& e) {
    p.early = ProjectionOutcome::filtered(reason::kPreexistingMarker, e.what());
    return p;
  }
  p.first_item = items.size();
  items.push_back(p.marked.text);
  if (uses_span_translations(config.scheme.kind)) {
    for (std::string& text : sentence.span_texts()) items.push_back(std::move(text));
  }
  p.item_count = items.size() - p.first_item;
  return p;
}

ProjectionOutcome finish(const AnnotatedSentence& sentence, Prepared& p,
                         std::span<const TranslationItem> translated,
                         const ProjectionConfig& config) {
  if (p.early) return std::move(*p.early);
  for (const TranslationItem& item : translated) {
    if (!item.ok) return ProjectionOutcome::failed(reason::kBackendError, item.error);
  }
  const MarkerKind kind = config.scheme.kind;
  const std::string& output = translated.front().output;

  std::vector<MarkerEntry> expected = p.marked.marker_map;
  if (kind == MarkerKind::Placeholder) {
    for (std::size_t k = 0; k < expected.size(); ++k) expected[k].close = translated[1 + k].output;
  }
  ExtractionResult extraction = extract_markers(output, config.scheme, expected);
  if (!extraction.valid()) {
    return ProjectionOutcome::filtered(to_string(extraction.status), extraction.diagnostic);
  }

  const std::vector<LabeledSpan>& source_spans = sentence.spans();
  std::vector<std::size_t> source_ids;
  bool low_confidence = false;
  if (kind == MarkerKind::XmlIndexed || kind == MarkerKind::Placeholder) {
    for (const FoundSpan& found : extraction.found_spans) source_ids.push_back(*found.marker_id);
  } else {
    const std::u32string clean = utf8::decode(extraction.clean_text);
    std::vector<std::string> bracketed;
    for (const FoundSpan& found : extraction.found_spans) {
      bracketed.push_back(
          utf8::encode(std::u32string_view(clean).substr(found.start, found.end - found.start)));
    }
    std::vector<Candidate> candidates;
    for (std::size_t k = 0; k < source_spans.size(); ++k) {
      candidates.push_back({source_spans[k].label, translated[1 + k].output});
    }
    const auto assignment = assign_labels_fuzzy(bracketed, candidates, config.matcher);
    if (!assignment) {
      return ProjectionOutcome::filtered(reason::kNoConfidentMatch,
                                         "no bracketed span matched a translated mention");
    }
    source_ids = assignment->candidate_for_span;
    low_confidence = assignment->low_confidence;
  }

  std::vector<LabeledSpan> target;
  for (std::size_t k = 0; k < extraction.found_spans.size(); ++k) {
    const FoundSpan& found = extraction.found_spans[k];
    target.push_back({k, found.start, found.end, source_spans[source_ids[k]].label});
  }
  try {
    ProjectionOutcome out = ProjectionOutcome::projected(build_target_sentence(
        sentence, std::move(extraction.clean_text), std::move(target), source_ids));
    out.low_confidence = low_confidence;
    if (low_confidence) out.diagnostics.push_back("positional fallback used for label assignment");
    return out;
  } catch (const ValidationError& e) {
    return ProjectionOutcome::filtered(reason::kInvalidTarget, e.what());
  }
}

}  // namespace

TranslateRequest projection_request(std::span<const AnnotatedSentence> sentences,
                                    const ProjectionConfig& config) {
  TranslateRequest request{{}, config.src_lang, config.tgt_lang};
  for (const AnnotatedSentence& sentence : sentences) prepare(sentence, config, request.items);
  return request;
}

CorpusProjection project_corpus(std::span<const AnnotatedSentence> sentences,
                                TranslationBackend& backend, const ProjectionConfig& config) {
  validate(config.matcher);
  TranslateRequest request{{}, config.src_lang, config.tgt_lang};
  std::vector<Prepared> prepared;
  prepared.reserve(sentences.size());
  for (const AnnotatedSentence& sentence : sentences) {
    prepared.push_back(prepare(sentence, config, request.items));
  }
  const TranslateResponse response = translate(request, backend);

  CorpusProjection result;
  result.outcomes.resize(sentences.size());
  detail::parallel_for(sentences.size(), config.jobs, [&](std::size_t i) {
    const std::span<const TranslationItem> items =
        prepared[i].early ? std::span<const TranslationItem>{}
                          : std::span(response.items).subspan(prepared[i].first_item,
                                                              prepared[i].item_count);
    result.outcomes[i] = finish(sentences[i], prepared[i], items, config);
  });

  for (const ProjectionOutcome& outcome : result.outcomes) {
    result.report.add(outcome.status, outcome.reason, outcome.low_confidence);
    if (outcome.sentence) result.sentences.push_back(*outcome.sentence);
  }
  return result;
}

ProjectionOutcome project_sentence(const AnnotatedSentence& sentence, TranslationBackend& backend,
                                   const ProjectionConfig& config) {
  ProjectionConfig single = config;
  single.jobs = 1;
  return std::move(project_corpus(std::span(&sentence, 1), backend, single).outcomes.front());
}

// ---------------------------------------------------------------------------
// QA

namespace {

struct PreparedQa {
  std::optional<QaOutcome> early;
  MarkedText marked;
  std::size_t first_item = 0;
};

QaOutcome qa_filtered(std::string_view why, std::string diagnostic) {
  QaOutcome out;
  out.status = OutcomeStatus::Filtered;
  out.reason = why;
  out.diagnostics.push_back(std::move(diagnostic));
  return out;
}

PreparedQa prepare_qa(const QaExample& ex, const ProjectionConfig& config,
                      std::vector<std::string>& items) {
  validate(ex);
  PreparedQa p;
  const AnnotatedSentence context(ex.context, {ex.answer});
  try {
    p.marked = insert_markers(context, config.scheme);
  } catch (const PreexistingMarkerError& e) {
    p.early = qa_filtered(reason::kPreexistingMarker, e.what());
    return p;
  }
  p.first_item = items.size();
  items.push_back(p.marked.text);
  items.push_back(ex.question);
  if (config.scheme.kind == MarkerKind::Placeholder) items.push_back(answer_text(ex));
  return p;
}

QaOutcome finish_qa(const QaExample& ex, PreparedQa& p, std::span<const TranslationItem> translated,
                    const ProjectionConfig& config) {
  if (p.early) return std::move(*p.early);
  for (const TranslationItem& item : translated) {
    if (!item.ok) {
      QaOutcome out = qa_filtered(reason::kBackendError, item.error);
      out.status = OutcomeStatus::Failed;
      return out;
    }
  }
  std::vector<MarkerEntry> expected = p.marked.marker_map;
  if (config.scheme.kind == MarkerKind::Placeholder) expected.front().close = translated[2].output;
  ExtractionResult extraction = extract_markers(translated[0].output, config.scheme, expected);
  if (!extraction.valid()) return qa_filtered(to_string(extraction.status), extraction.diagnostic);

  const FoundSpan& found = extraction.found_spans.front();
  QaExample projected = ex;
  projected.context = std::move(extraction.clean_text);
  projected.question = translated[1].output;
  projected.answer = LabeledSpan{0, found.start, found.end, std::string(kAnswerLabel)};
  QaOutcome out;
  out.example = std::move(projected);
  return out;
}

}  // namespace

TranslateRequest qa_projection_request(std::span<const QaExample> examples,
                                       const ProjectionConfig& config) {
  TranslateRequest request{{}, config.src_lang, config.tgt_lang};
  for (const QaExample& ex : examples) prepare_qa(ex, config, request.items);
  return request;
}

QaCorpusProjection project_qa_corpus(std::span<const QaExample> examples,
                                     TranslationBackend& backend, const ProjectionConfig& config) {
  TranslateRequest request{{}, config.src_lang, config.tgt_lang};
  std::vector<PreparedQa> prepared;
  std::vector<std::size_t> item_end;
  for (const QaExample& ex : examples) {
    prepared.push_back(prepare_qa(ex, config, request.items));
    item_end.push_back(request.items.size());
  }
  const TranslateResponse response = translate(request, backend);

  QaCorpusProjection result;
  result.outcomes.resize(examples.size());
  detail::parallel_for(examples.size(), config.jobs, [&](std::size_t i) {
    const PreparedQa& p = prepared[i];
    const std::span<const TranslationItem> items =
        p.early ? std::span<const TranslationItem>{}
                : std::span(response.items).subspan(p.first_item, item_end[i] - p.first_item);
    result.outcomes[i] = finish_qa(examples[i], prepared[i], items, config);
  });
  for (const QaOutcome& outcome : result.outcomes) {
    result.report.add(outcome.status, outcome.reason, false);
    if (outcome.example) result.examples.push_back(*outcome.example);
  }
  return result;
}

QaOutcome project_qa(const QaExample& example, TranslationBackend& backend,
                     const ProjectionConfig& config) {
  ProjectionConfig single = config;
  single.jobs = 1;
  return std::move(project_qa_corpus(std::span(&example, 1), backend, single).outcomes.front());
}

}  // namespace spanbridge
