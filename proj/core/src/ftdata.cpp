#include "spanbridge/ftdata.hpp"

#include <algorithm>

#include "spanbridge/error.hpp"
#include "spanbridge/markers.hpp"
#include "spanbridge/utf8.hpp"

namespace spanbridge {
namespace {

bool overlaps(const CodepointRange& r, std::span<const CodepointRange> taken) {
  return std::any_of(taken.begin(), taken.end(), [&](const CodepointRange& t) {
    return r.start < t.end && t.start < r.end;
  });
}

}  // namespace

std::optional<CodepointRange> match_entity_in_target(std::string_view entity,
                                                     std::string_view target,
                                                     const FtDataConfig& config,
                                                     std::span<const CodepointRange> taken) {
  std::u32string needle = utf8::decode(entity);
  std::u32string haystack = utf8::decode(target);
  if (needle.empty()) return std::nullopt;
  if (config.match_case_fold) {
    needle = utf8::fold_case(needle);
    haystack = utf8::fold_case(haystack);
  }
  for (std::size_t pos = haystack.find(needle); pos != std::u32string::npos;
       pos = haystack.find(needle, pos + 1)) {
    const CodepointRange range{pos, pos + needle.size()};
    if (!overlaps(range, taken)) return range;
  }
  return std::nullopt;
}

std::vector<FtPair> build_ft_pairs(std::span<const ParallelPair> pairs,
                                   TranslationBackend& backend, const FtDataConfig& config) {
  if (config.k == 0) throw ValidationError("ftdata budget k must be >= 1");
  const MarkerScheme brackets{MarkerKind::SquareBracket, true, {}};

  TranslateRequest request{{}, config.src_lang, config.tgt_lang};
  std::vector<std::size_t> first_item;
  for (const ParallelPair& pair : pairs) {
    first_item.push_back(request.items.size());
    for (std::string& text : pair.src.span_texts()) request.items.push_back(std::move(text));
  }
  const TranslateResponse response = translate(request, backend);

  struct Built {
    FtPair pair;
    std::size_t src_length;
  };
  std::vector<Built> multi;
  std::vector<Built> single;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const ParallelPair& pair = pairs[p];
    if (has_marker_characters(pair.src.text(), brackets) ||
        has_marker_characters(pair.tgt, brackets)) {
      continue;
    }
    std::vector<LabeledSpan> src_spans;
    std::vector<LabeledSpan> tgt_spans;
    std::vector<CodepointRange> taken;
    for (std::size_t e = 0; e < pair.src.spans().size(); ++e) {
      const TranslationItem& item = response.items[first_item[p] + e];
      if (!item.ok || item.output.empty()) continue;
      const auto range = match_entity_in_target(item.output, pair.tgt, config, taken);
      if (!range) continue;
      taken.push_back(*range);
      const LabeledSpan& src_span = pair.src.spans()[e];
      src_spans.push_back({src_spans.size(), src_span.start, src_span.end, src_span.label});
      tgt_spans.push_back({0, range->start, range->end, src_span.label});
    }
    if (src_spans.empty()) continue;

    const std::size_t count = src_spans.size();
    FtPair built{insert_markers(AnnotatedSentence(pair.src.text(), std::move(src_spans)), brackets).text,
                 insert_markers(make_sentence(pair.tgt, std::move(tgt_spans)), brackets).text, count};
    (count >= 2 ? multi : single).push_back({std::move(built), pair.src.length()});
  }

  std::stable_sort(single.begin(), single.end(), [&](const Built& a, const Built& b) {
    return config.length_sort == LengthSort::Descending ? a.src_length > b.src_length
                                                        : a.src_length < b.src_length;
  });
  std::vector<FtPair> out;
  for (auto* part : {&multi, &single}) {
    for (Built& b : *part) {
      if (out.size() == config.k) return out;
      out.push_back(std::move(b.pair));
    }
  }
  return out;
}

std::string emit_ft_tsv(std::span<const FtPair> pairs) {
  std::string out;
  for (const FtPair& pair : pairs) {
    if (pair.marked_src.find_first_of("\t\n\r") != std::string::npos ||
        pair.marked_tgt.find_first_of("\t\n\r") != std::string::npos) {
      throw ValidationError("fine-tuning pair contains a tab or newline");
    }
    out += pair.marked_src;
    out += '\t';
    out += pair.marked_tgt;
    out += '\n';
  }
  return out;
}

AnnotatedSentence gazetteer_annotate(std::string text,
                                     std::span<const std::pair<std::string, std::string>> entries) {
  const std::u32string cps = utf8::decode(text);
  std::vector<std::pair<std::u32string, std::string>> sorted;
  for (const auto& [surface, label] : entries) sorted.emplace_back(utf8::decode(surface), label);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });

  std::vector<LabeledSpan> spans;
  std::size_t pos = 0;
  while (pos < cps.size()) {
    bool hit = false;
    for (const auto& [surface, label] : sorted) {
      if (!surface.empty() && cps.compare(pos, surface.size(), surface) == 0) {
        spans.push_back({spans.size(), pos, pos + surface.size(), label});
        pos += surface.size();
        hit = true;
        break;
      }
    }
    if (!hit) ++pos;
  }
  return AnnotatedSentence(std::move(text), std::move(spans));
}

}  // namespace spanbridge
