#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanbridge/annotation.hpp"
#include "spanbridge/markers.hpp"
#include "spanbridge/projection.hpp"
#include "spanbridge/translate.hpp"

namespace spanbridge {

enum class MatchMode {
  Fuzzy,       // greedy descending-ratio assignment
  Sequential,  // left-to-right by relative position
};

enum class NoMatchPolicy { PositionalFallback, DropSentence };

struct MatcherConfig {
  MatchMode mode = MatchMode::Fuzzy;
  double threshold = 0.5;  // a pair matches when ratio > threshold
  NoMatchPolicy on_no_match = NoMatchPolicy::PositionalFallback;
  bool nfc_normalize = false;
};

/// Throws ValidationError when threshold is outside [0, 1].
void validate(const MatcherConfig& config);

/// A labeled mention produced by translating a source span on its own.
struct Candidate {
  std::string label;
  std::string mention;
};

struct LabelAssignment {
  std::vector<std::size_t> candidate_for_span;  // index into candidates, per bracketed span
  std::vector<std::string> labels;
  bool low_confidence = false;
};

/// Assigns each bracketed span one candidate label. Returns nullopt
/// (no confident match) only under NoMatchPolicy::DropSentence.
/// Throws ContractError when the two lists differ in length.
std::optional<LabelAssignment> assign_labels_fuzzy(std::span<const std::string> bracketed,
                                                   std::span<const Candidate> candidates,
                                                   const MatcherConfig& config);

struct ProjectionConfig {
  MarkerScheme scheme;
  MatcherConfig matcher;
  std::string src_lang = "en";
  std::string tgt_lang = "xx";
  std::size_t jobs = 1;
};

ProjectionOutcome project_sentence(const AnnotatedSentence& sentence, TranslationBackend& backend,
                                   const ProjectionConfig& config);

/// One translate call for the whole corpus; per-sentence work runs on
/// `config.jobs` threads. Output order is input order for any job count.
CorpusProjection project_corpus(std::span<const AnnotatedSentence> sentences,
                                TranslationBackend& backend, const ProjectionConfig& config);

struct QaOutcome {
  OutcomeStatus status = OutcomeStatus::Projected;
  std::string reason;
  std::optional<QaExample> example;
  std::vector<std::string> diagnostics;
};

QaOutcome project_qa(const QaExample& example, TranslationBackend& backend,
                     const ProjectionConfig& config);

struct QaCorpusProjection {
  std::vector<QaExample> examples;
  std::vector<QaOutcome> outcomes;
  ProjectionReport report;
};

QaCorpusProjection project_qa_corpus(std::span<const QaExample> examples,
                                     TranslationBackend& backend, const ProjectionConfig& config);

/// The translate requests project_corpus would issue (for cache warming).
TranslateRequest projection_request(std::span<const AnnotatedSentence> sentences,
                                    const ProjectionConfig& config);
TranslateRequest qa_projection_request(std::span<const QaExample> examples,
                                       const ProjectionConfig& config);

}  // namespace spanbridge
