#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spanbridge/annotation.hpp"
#include "spanbridge/tokens.hpp"
#include "spanbridge/translate.hpp"

namespace spanbridge {

/// Source sentence with entities already tagged (external NER) and its
/// target-side reference sentence.
struct ParallelPair {
  AnnotatedSentence src;
  std::string tgt;
};

enum class LengthSort { Descending, Ascending };

struct FtDataConfig {
  std::size_t k = 5000;
  bool match_case_fold = true;
  LengthSort length_sort = LengthSort::Descending;
  std::string src_lang = "en";
  std::string tgt_lang = "xx";
};

/// Leftmost occurrence of `entity` in `target` that does not overlap `taken`.
std::optional<CodepointRange> match_entity_in_target(std::string_view entity,
                                                     std::string_view target,
                                                     const FtDataConfig& config,
                                                     std::span<const CodepointRange> taken = {});

struct FtPair {
  std::string marked_src;
  std::string marked_tgt;
  std::size_t entities = 0;  // bracket pairs per side

  friend bool operator==(const FtPair&, const FtPair&) = default;
};

/// Brackets every source entity whose translation is found in the target.
/// Pairs with two or more bracketed entities come first (input order), then the
/// single-entity pairs sorted by source length; the result is cut to `k`.
std::vector<FtPair> build_ft_pairs(std::span<const ParallelPair> pairs,
                                   TranslationBackend& backend, const FtDataConfig& config);

/// marked_src TAB marked_tgt per line. Throws ValidationError on embedded tabs/newlines.
std::string emit_ft_tsv(std::span<const FtPair> pairs);

/// Test helper: tags every occurrence of gazetteer entries (longest first,
/// left to right, non-overlapping).
AnnotatedSentence gazetteer_annotate(std::string text,
                                     std::span<const std::pair<std::string, std::string>> entries);

}  // namespace spanbridge
