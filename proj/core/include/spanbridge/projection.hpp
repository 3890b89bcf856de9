#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spanbridge/annotation.hpp"

namespace spanbridge {

enum class OutcomeStatus { Projected, Filtered, Failed };

std::string_view to_string(OutcomeStatus status) noexcept;

// Reasons recorded in outcomes and reports.
namespace reason {
inline constexpr std::string_view kCountMismatch = "CountMismatch";
inline constexpr std::string_view kStructureError = "StructureError";
inline constexpr std::string_view kPreexistingMarker = "PreexistingMarker";
inline constexpr std::string_view kNoConfidentMatch = "NoConfidentMatch";
inline constexpr std::string_view kUnprojectable = "Unprojectable";
inline constexpr std::string_view kOverlap = "Overlap";
inline constexpr std::string_view kInvalidTarget = "InvalidTarget";
inline constexpr std::string_view kBackendError = "BackendError";
}  // namespace reason

/// Per-sentence result. `sentence` is set iff status == Projected, and then
/// carries exactly as many spans as the source.
struct ProjectionOutcome {
  OutcomeStatus status = OutcomeStatus::Projected;
  std::string reason;
  std::optional<AnnotatedSentence> sentence;
  std::vector<std::string> diagnostics;
  bool low_confidence = false;

  static ProjectionOutcome projected(AnnotatedSentence sentence);
  static ProjectionOutcome filtered(std::string_view reason, std::string diagnostic = {});
  static ProjectionOutcome failed(std::string_view reason, std::string diagnostic = {});
};

struct ProjectionReport {
  std::size_t total = 0;
  std::size_t projected = 0;
  std::size_t filtered = 0;
  std::size_t failed = 0;
  std::size_t low_confidence = 0;
  std::map<std::string, std::size_t> reasons;

  void add(OutcomeStatus status, const std::string& reason, bool low_confidence);

  friend bool operator==(const ProjectionReport&, const ProjectionReport&) = default;
};

struct CorpusProjection {
  std::vector<AnnotatedSentence> sentences;  // projected ones, input order
  std::vector<ProjectionOutcome> outcomes;   // one per input sentence
  ProjectionReport report;
};

/// Canonical JSON (sorted keys, includes projection_rate when total > 0).
std::string report_to_json(const ProjectionReport& report);
ProjectionReport report_from_json(std::string_view json);

/// Builds the target sentence from spans found in `text`. `source_ids[k]` is
/// the source span id that target span k (in `target_spans` order) came from.
/// Spans are re-sorted by start, renumbered, and relations remapped; relations
/// touching an unmapped span are dropped. Throws ValidationError on overlap.
AnnotatedSentence build_target_sentence(const AnnotatedSentence& source, std::string text,
                                        std::vector<LabeledSpan> target_spans,
                                        const std::vector<std::size_t>& source_ids);

}  // namespace spanbridge
