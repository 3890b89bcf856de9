#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spanbridge/annotation.hpp"

namespace spanbridge {

enum class MarkerKind {
  SquareBracket,  // [ span ]
  XmlIndexed,     // <a> span </a>, <b> ... </b>, ...
  DoubleQuote,    // " span "
  Placeholder,    // span text replaced by a token such as PER0
};

struct MarkerScheme {
  MarkerKind kind = MarkerKind::SquareBracket;
  bool pad_with_space = true;
  /// Placeholder template; "{label}" and "{i}" (span id) are substituted.
  std::string placeholder_format = "{label}{i}";
};

/// For Placeholder schemes `open` is the placeholder token and `close` holds the
/// text that replaces it on extraction (the original span text after insertion).
struct MarkerEntry {
  std::size_t span_id = 0;
  std::string open;
  std::string close;

  friend bool operator==(const MarkerEntry&, const MarkerEntry&) = default;
};

struct MarkedText {
  std::string text;
  std::vector<MarkerEntry> marker_map;
};

enum class ExtractionStatus { Valid, CountMismatch, StructureError };

struct FoundSpan {
  std::optional<std::size_t> marker_id;  // empty for anonymous brackets/quotes
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const FoundSpan&, const FoundSpan&) = default;
};

struct ExtractionResult {
  std::string clean_text;
  std::vector<FoundSpan> found_spans;  // sorted by start, offsets in clean_text
  ExtractionStatus status = ExtractionStatus::Valid;
  std::string diagnostic;

  bool valid() const noexcept { return status == ExtractionStatus::Valid; }
};

/// Wraps (or replaces) every span with markers. Throws PreexistingMarkerError
/// when the text already contains characters of the scheme.
MarkedText insert_markers(const AnnotatedSentence& sentence, const MarkerScheme& scheme);

ExtractionResult extract_markers(std::string_view translated, const MarkerScheme& scheme,
                                 std::span<const MarkerEntry> expected);

/// Best-effort marker removal for scoring; never fails.
std::string strip_markers(std::string_view text, const MarkerScheme& scheme);

/// a..z, aa, ab, ... (bijective base 26).
std::string xml_tag_name(std::size_t index);
std::optional<std::size_t> xml_tag_index(std::string_view name);

std::string placeholder_token(const MarkerScheme& scheme, std::string_view label, std::size_t id);

/// True when `text` holds characters that `scheme` would treat as markers.
bool has_marker_characters(std::string_view text, const MarkerScheme& scheme);

std::string_view to_string(MarkerKind kind) noexcept;
std::string_view to_string(ExtractionStatus status) noexcept;
/// Accepts the CLI names: brackets, xml, quotes, placeholder.
MarkerKind parse_marker_kind(std::string_view name);

}  // namespace spanbridge
