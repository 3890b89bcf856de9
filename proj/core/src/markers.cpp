#include "spanbridge/markers.hpp"

#include <algorithm>
#include <map>

#include "spanbridge/error.hpp"
#include "spanbridge/utf8.hpp"

namespace spanbridge {
namespace {

constexpr char32_t kQuote = U'"';

bool is_quote_variant(char32_t c) noexcept {
  return c == U'«' || c == U'»' || c == U'“' || c == U'”' || c == U'„';
}

bool is_pad_space(char32_t c) noexcept { return c == U' ' || c == U'\u00A0'; }

bool is_word_char(char32_t c) noexcept {
  return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') || (c >= U'0' && c <= U'9') ||
         c == U'_';
}

enum class TokKind { Text, Open, Close, Malformed };

struct Tok {
  TokKind kind = TokKind::Text;
  std::size_t len = 1;
  std::string name;  // xml tag name
};

// Recognizes a marker starting at src[i]. `open` tells the quote lexer which
// role a straight quote plays.
Tok lex(MarkerKind kind, std::u32string_view src, std::size_t i, bool open) {
  const char32_t c = src[i];
  switch (kind) {
    case MarkerKind::SquareBracket:
      if (c == U'[') return {TokKind::Open, 1, {}};
      if (c == U']') return {TokKind::Close, 1, {}};
      return {};
    case MarkerKind::DoubleQuote:
      if (c == kQuote) return {open ? TokKind::Close : TokKind::Open, 1, {}};
      return {};
    case MarkerKind::XmlIndexed: {
      if (c == U'>') return {TokKind::Malformed, 1, {}};
      if (c != U'<') return {};
      std::size_t j = i + 1;
      const bool closing = j < src.size() && src[j] == U'/';
      if (closing) ++j;
      const std::size_t name_start = j;
      while (j < src.size() && src[j] >= U'a' && src[j] <= U'z') ++j;
      if (j == name_start || j >= src.size() || src[j] != U'>') return {TokKind::Malformed, 1, {}};
      std::string name = utf8::encode(src.substr(name_start, j - name_start));
      return {closing ? TokKind::Close : TokKind::Open, j + 1 - i, std::move(name)};
    }
    case MarkerKind::Placeholder:
      return {};
  }
  return {};
}

std::u32string fold_quotes(std::u32string text) {
  for (char32_t& c : text) {
    if (is_quote_variant(c)) c = kQuote;
  }
  return text;
}

std::pair<std::string, std::string> marker_pair(const MarkerScheme& scheme, std::size_t index) {
  switch (scheme.kind) {
    case MarkerKind::SquareBracket:
      return {"[", "]"};
    case MarkerKind::DoubleQuote:
      return {"\"", "\""};
    case MarkerKind::XmlIndexed: {
      const std::string name = xml_tag_name(index);
      return {"<" + name + ">", "</" + name + ">"};
    }
    case MarkerKind::Placeholder:
      break;
  }
  return {};
}

// Occurrences of `token` in `text` not glued to ASCII word characters.
std::vector<std::size_t> find_token(std::u32string_view text, std::u32string_view token) {
  std::vector<std::size_t> hits;
  if (token.empty()) return hits;
  for (std::size_t pos = text.find(token); pos != std::u32string_view::npos;
       pos = text.find(token, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_char(text[pos - 1]);
    const std::size_t after = pos + token.size();
    const bool right_ok = after >= text.size() || !is_word_char(text[after]);
    if (left_ok && right_ok) hits.push_back(pos);
  }
  return hits;
}

ExtractionResult extract_placeholders(std::u32string_view src,
                                      std::span<const MarkerEntry> expected) {
  ExtractionResult result;
  struct Hit {
    std::size_t pos;
    std::size_t len;
    const MarkerEntry* entry;
  };
  std::vector<Hit> hits;
  for (const MarkerEntry& entry : expected) {
    const std::u32string token = utf8::decode(entry.open);
    const std::vector<std::size_t> found = find_token(src, token);
    if (found.size() != 1) {
      result.status = ExtractionStatus::CountMismatch;
      result.diagnostic = "placeholder " + entry.open + " found " + std::to_string(found.size()) +
                          " times, expected once";
      result.clean_text = utf8::encode(src);
      return result;
    }
    hits.push_back({found.front(), token.size(), &entry});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; });

  std::u32string clean;
  std::size_t cursor = 0;
  for (const Hit& hit : hits) {
    if (hit.pos < cursor) {
      result.status = ExtractionStatus::StructureError;
      result.diagnostic = "placeholder " + hit.entry->open + " overlaps another placeholder";
      result.clean_text = utf8::encode(src);
      return result;
    }
    clean.append(src.substr(cursor, hit.pos - cursor));
    const std::u32string replacement = utf8::decode(hit.entry->close);
    if (replacement.empty()) {
      result.status = ExtractionStatus::StructureError;
      result.diagnostic = "empty replacement for placeholder " + hit.entry->open;
      result.clean_text = utf8::encode(src);
      return result;
    }
    result.found_spans.push_back(
        {hit.entry->span_id, clean.size(), clean.size() + replacement.size()});
    clean += replacement;
    cursor = hit.pos + hit.len;
  }
  clean.append(src.substr(cursor));
  result.clean_text = utf8::encode(clean);
  return result;
}

}  // namespace

std::string xml_tag_name(std::size_t index) {
  std::size_t width = 1;
  std::size_t block = 26;
  while (index >= block) {
    index -= block;
    ++width;
    block *= 26;
  }
  std::string name(width, 'a');
  for (std::size_t k = width; k-- > 0;) {
    name[k] = static_cast<char>('a' + index % 26);
    index /= 26;
  }
  return name;
}

std::optional<std::size_t> xml_tag_index(std::string_view name) {
  if (name.empty() || name.size() > 8) return std::nullopt;
  std::size_t offset = 0;
  std::size_t block = 1;
  for (std::size_t w = 1; w < name.size(); ++w) {
    block *= 26;
    offset += block;
  }
  std::size_t value = 0;
  for (char c : name) {
    if (c < 'a' || c > 'z') return std::nullopt;
    value = value * 26 + static_cast<std::size_t>(c - 'a');
  }
  return offset + value;
}

std::string placeholder_token(const MarkerScheme& scheme, std::string_view label, std::size_t id) {
  std::string out;
  const std::string& fmt = scheme.placeholder_format;
  for (std::size_t i = 0; i < fmt.size();) {
    if (fmt.compare(i, 7, "{label}") == 0) {
      out += label;
      i += 7;
    } else if (fmt.compare(i, 3, "{i}") == 0) {
      out += std::to_string(id);
      i += 3;
    } else {
      out += fmt[i++];
    }
  }
  return out;
}

bool has_marker_characters(std::string_view text, const MarkerScheme& scheme) {
  switch (scheme.kind) {
    case MarkerKind::SquareBracket:
      return text.find_first_of("[]") != std::string_view::npos;
    case MarkerKind::XmlIndexed:
      return text.find_first_of("<>") != std::string_view::npos;
    case MarkerKind::DoubleQuote: {
      const std::u32string cps = utf8::decode(text);
      return std::any_of(cps.begin(), cps.end(),
                         [](char32_t c) { return c == kQuote || is_quote_variant(c); });
    }
    case MarkerKind::Placeholder:
      return false;
  }
  return false;
}

MarkedText insert_markers(const AnnotatedSentence& sentence, const MarkerScheme& scheme) {
  if (has_marker_characters(sentence.text(), scheme)) {
    throw PreexistingMarkerError("text already contains " + std::string(to_string(scheme.kind)) +
                                 " marker characters");
  }
  const std::u32string cps = utf8::decode(sentence.text());
  MarkedText marked;
  std::string& out = marked.text;
  std::size_t cursor = 0;

  if (scheme.kind == MarkerKind::Placeholder) {
    if (scheme.placeholder_format.find("{i}") == std::string::npos) {
      throw ValidationError("placeholder format must contain {i}");
    }
    for (const LabeledSpan& span : sentence.spans()) {
      std::string token = placeholder_token(scheme, span.label, span.id);
      if (token.find_first_of(" \t\n\r") != std::string::npos) {
        throw ValidationError("placeholder token '" + token + "' contains whitespace");
      }
      if (!find_token(cps, utf8::decode(token)).empty()) {
        throw PreexistingMarkerError("text already contains placeholder " + token);
      }
      out += utf8::encode(std::u32string_view(cps).substr(cursor, span.start - cursor));
      out += token;
      marked.marker_map.push_back(
          {span.id, std::move(token),
           utf8::encode(std::u32string_view(cps).substr(span.start, span.length()))});
      cursor = span.end;
    }
    out += utf8::encode(std::u32string_view(cps).substr(cursor));
    return marked;
  }

  const std::string pad = scheme.pad_with_space ? " " : "";
  for (const LabeledSpan& span : sentence.spans()) {
    auto [open, close] = marker_pair(scheme, span.id);
    out += utf8::encode(std::u32string_view(cps).substr(cursor, span.start - cursor));
    out += open;
    out += pad;
    out += utf8::encode(std::u32string_view(cps).substr(span.start, span.length()));
    out += pad;
    out += close;
    marked.marker_map.push_back({span.id, std::move(open), std::move(close)});
    cursor = span.end;
  }
  out += utf8::encode(std::u32string_view(cps).substr(cursor));
  return marked;
}

ExtractionResult extract_markers(std::string_view translated, const MarkerScheme& scheme,
                                 std::span<const MarkerEntry> expected) {
  std::u32string src;
  try {
    src = utf8::decode(translated);
  } catch (const ParseError& e) {
    ExtractionResult bad;
    bad.status = ExtractionStatus::StructureError;
    bad.diagnostic = e.what();
    return bad;
  }
  if (scheme.kind == MarkerKind::Placeholder) return extract_placeholders(src, expected);
  if (scheme.kind == MarkerKind::DoubleQuote) src = fold_quotes(std::move(src));

  std::map<std::string, std::size_t> tag_ids;
  if (scheme.kind == MarkerKind::XmlIndexed) {
    for (const MarkerEntry& entry : expected) {
      tag_ids.emplace(entry.open.substr(1, entry.open.size() - 2), entry.span_id);
    }
  }

  ExtractionResult result;
  const auto fail = [&](ExtractionStatus status, std::string diagnostic) {
    result.status = status;
    result.diagnostic = std::move(diagnostic);
    result.clean_text = strip_markers(translated, scheme);
    return result;
  };

  struct Open {
    std::size_t start;
    std::string name;
  };
  std::optional<Open> open;
  std::u32string clean;
  std::vector<std::string> names;
  const bool pad = scheme.pad_with_space;

  for (std::size_t i = 0; i < src.size();) {
    Tok tok = lex(scheme.kind, src, i, open.has_value());
    switch (tok.kind) {
      case TokKind::Text:
        clean.push_back(src[i]);
        ++i;
        break;
      case TokKind::Malformed:
        return fail(ExtractionStatus::StructureError,
                    "malformed marker fragment at offset " + std::to_string(i));
      case TokKind::Open:
        if (open) {
          return fail(ExtractionStatus::StructureError,
                      "nested marker at offset " + std::to_string(i));
        }
        i += tok.len;
        if (pad) {
          while (i < src.size() && is_pad_space(src[i])) ++i;
        }
        open = Open{clean.size(), std::move(tok.name)};
        break;
      case TokKind::Close: {
        if (!open) {
          return fail(ExtractionStatus::StructureError,
                      "closing marker without opening marker at offset " + std::to_string(i));
        }
        if (open->name != tok.name) {
          return fail(ExtractionStatus::StructureError,
                      "tag <" + open->name + "> closed by </" + tok.name + ">");
        }
        if (pad) {
          while (clean.size() > open->start && is_pad_space(clean.back())) clean.pop_back();
        }
        if (clean.size() == open->start) {
          return fail(ExtractionStatus::StructureError,
                      "empty marker pair at offset " + std::to_string(i));
        }
        result.found_spans.push_back({std::nullopt, open->start, clean.size()});
        names.push_back(std::move(open->name));
        open.reset();
        i += tok.len;
        break;
      }
    }
  }

  if (open) {
    return fail(ExtractionStatus::CountMismatch,
                "marker opened at clean offset " + std::to_string(open->start) + " never closed");
  }
  if (result.found_spans.size() != expected.size()) {
    return fail(ExtractionStatus::CountMismatch,
                "expected " + std::to_string(expected.size()) + " marker pairs, found " +
                    std::to_string(result.found_spans.size()));
  }
  if (scheme.kind == MarkerKind::XmlIndexed) {
    std::vector<bool> seen(expected.size(), false);
    for (std::size_t k = 0; k < names.size(); ++k) {
      const auto it = tag_ids.find(names[k]);
      if (it == tag_ids.end()) {
        return fail(ExtractionStatus::CountMismatch, "unexpected tag <" + names[k] + ">");
      }
      const auto slot = static_cast<std::size_t>(
          std::distance(expected.begin(),
                        std::find_if(expected.begin(), expected.end(),
                                     [&](const MarkerEntry& e) { return e.span_id == it->second; })));
      if (seen[slot]) {
        return fail(ExtractionStatus::CountMismatch, "tag <" + names[k] + "> appears twice");
      }
      seen[slot] = true;
      result.found_spans[k].marker_id = it->second;
    }
  }
  result.clean_text = utf8::encode(clean);
  return result;
}

std::string strip_markers(std::string_view text, const MarkerScheme& scheme) {
  if (scheme.kind == MarkerKind::Placeholder || !utf8::is_valid(text)) return std::string(text);
  std::u32string src = utf8::decode(text);
  if (scheme.kind == MarkerKind::DoubleQuote) src = fold_quotes(std::move(src));

  const bool pad = scheme.pad_with_space;
  std::u32string out;
  bool open = false;
  for (std::size_t i = 0; i < src.size();) {
    const Tok tok = lex(scheme.kind, src, i, open);
    if (tok.kind == TokKind::Text || tok.kind == TokKind::Malformed) {
      out.push_back(src[i++]);
      continue;
    }
    i += tok.len;
    if (tok.kind == TokKind::Open) {
      if (pad) {
        while (i < src.size() && is_pad_space(src[i])) ++i;
      }
      open = true;
    } else {
      if (pad && open) {
        while (!out.empty() && is_pad_space(out.back())) out.pop_back();
      }
      open = false;
    }
    // Removal must not leave a doubled space behind.
    if (!out.empty() && out.back() == U' ' && i < src.size() && src[i] == U' ') ++i;
  }
  const std::size_t first = out.find_first_not_of(U' ');
  if (first == std::u32string::npos) return {};
  const std::size_t last = out.find_last_not_of(U' ');
  return utf8::encode(std::u32string_view(out).substr(first, last - first + 1));
}

std::string_view to_string(MarkerKind kind) noexcept {
  switch (kind) {
    case MarkerKind::SquareBracket:
      return "brackets";
    case MarkerKind::XmlIndexed:
      return "xml";
    case MarkerKind::DoubleQuote:
      return "quotes";
    case MarkerKind::Placeholder:
      return "placeholder";
  }
  return "unknown";
}

std::string_view to_string(ExtractionStatus status) noexcept {
  switch (status) {
    case ExtractionStatus::Valid:
      return "Valid";
    case ExtractionStatus::CountMismatch:
      return "CountMismatch";
    case ExtractionStatus::StructureError:
      return "StructureError";
  }
  return "unknown";
}

MarkerKind parse_marker_kind(std::string_view name) {
  if (name == "brackets") return MarkerKind::SquareBracket;
  if (name == "xml") return MarkerKind::XmlIndexed;
  if (name == "quotes") return MarkerKind::DoubleQuote;
  if (name == "placeholder") return MarkerKind::Placeholder;
  throw ValidationError("unknown marker scheme '" + std::string(name) + "'");
}

}  // namespace spanbridge
