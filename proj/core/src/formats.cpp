#include "spanbridge/formats.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>

#include "spanbridge/error.hpp"
#include "spanbridge/tokens.hpp"
#include "spanbridge/utf8.hpp"

namespace spanbridge {

using nlohmann::json;

namespace {

struct BioTag {
  char prefix = 'O';  // 'O', 'B' or 'I'
  std::string label;
};

BioTag parse_tag(const std::string& tag, std::size_t index) {
  if (tag == "O") return {};
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
    std::string label = tag.substr(2);
    if (is_valid_label(label)) return {tag[0], std::move(label)};
  }
  throw BioError("invalid BIO tag '" + tag + "'", index);
}

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::vector<std::string_view> split_char(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t pos = s.find(sep, begin);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(begin));
      return out;
    }
    out.push_back(s.substr(begin, pos - begin));
    begin = pos + 1;
  }
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    fn(chomp(text.substr(begin, end - begin)), ++line_no);
    begin = end + 1;
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  const auto it = object.find(key);
  if (it == object.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string require_string(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  if (!value.is_string()) throw ParseError(where + ": \"" + key + "\" must be a string");
  return value.get<std::string>();
}

std::size_t require_index(const json& object, const char* key, const std::string& where) {
  const json& value = require(object, key, where);
  if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
    throw ParseError(where + ": \"" + key + "\" must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

std::vector<LabeledSpan> spans_from_bio(std::span<const std::string> tokens,
                                        std::span<const std::string> tags, BioMode mode) {
  if (tokens.size() != tags.size()) {
    throw BioError("token/tag count mismatch (" + std::to_string(tokens.size()) + " tokens, " +
                       std::to_string(tags.size()) + " tags)",
                   std::min(tokens.size(), tags.size()));
  }
  const std::vector<CodepointRange> offsets =
      token_offsets(std::vector<std::string>(tokens.begin(), tokens.end()));

  std::vector<LabeledSpan> spans;
  std::optional<LabeledSpan> open;
  const auto close = [&] {
    if (open) {
      open->id = spans.size();
      spans.push_back(std::move(*open));
      open.reset();
    }
  };

  for (std::size_t i = 0; i < tags.size(); ++i) {
    BioTag tag = parse_tag(tags[i], i);
    if (tag.prefix == 'O') {
      close();
      continue;
    }
    if (tag.prefix == 'I' && open && open->label == tag.label) {
      open->end = offsets[i].end;
      continue;
    }
    if (tag.prefix == 'I' && mode == BioMode::Strict) {
      throw BioError(open ? "label change inside run" : "I-" + tag.label + " without preceding B-" +
                                                            tag.label,
                     i);
    }
    close();
    open = LabeledSpan{0, offsets[i].start, offsets[i].end, std::move(tag.label)};
  }
  close();
  return spans;
}

std::vector<std::string> bio_from_spans(std::span<const std::string> tokens,
                                        std::span<const LabeledSpan> spans) {
  const std::vector<CodepointRange> offsets =
      token_offsets(std::vector<std::string>(tokens.begin(), tokens.end()));
  std::vector<std::string> tags(tokens.size(), "O");
  for (const LabeledSpan& span : spans) {
    const auto range = token_range_for(offsets, span.start, span.end);
    if (!range) {
      throw ValidationError("span " + std::to_string(span.id) + " (" + std::to_string(span.start) +
                            "," + std::to_string(span.end) + "," + span.label +
                            ") does not align with token boundaries");
    }
    for (std::size_t t = range->begin; t < range->end; ++t) {
      tags[t] = (t == range->begin ? "B-" : "I-") + span.label;
    }
  }
  return tags;
}

std::vector<AnnotatedSentence> parse_conll(std::string_view text, BioMode mode) {
  std::vector<AnnotatedSentence> sentences;
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  std::vector<std::size_t> lines;

  const auto flush = [&] {
    if (tokens.empty()) return;
    try {
      std::vector<LabeledSpan> spans = spans_from_bio(tokens, tags, mode);
      sentences.emplace_back(join_tokens(tokens), std::move(spans));
    } catch (const BioError& e) {
      throw ParseError(e.what(), lines[std::min(e.token_index(), lines.size() - 1)]);
    }
    tokens.clear();
    tags.clear();
    lines.clear();
  };

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (is_blank(line)) {
      flush();
      return;
    }
    if (line.starts_with("-DOCSTART-")) return;
    const std::vector<std::string_view> fields = split_char(line, '\t');
    if (fields.size() != 2) {
      throw ParseError("expected 2 tab-separated columns, found " + std::to_string(fields.size()),
                       line_no);
    }
    if (fields[0].empty() || fields[0].find(' ') != std::string_view::npos) {
      throw ParseError("token must be non-empty and contain no spaces", line_no);
    }
    if (!utf8::is_valid(fields[0])) throw ParseError("invalid UTF-8", line_no);
    tokens.emplace_back(fields[0]);
    tags.emplace_back(fields[1]);
    lines.push_back(line_no);
  });
  flush();
  return sentences;
}

std::string emit_conll(std::span<const AnnotatedSentence> sentences) {
  std::string out;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const AnnotatedSentence& sentence = sentences[s];
    std::vector<std::string> tokens;
    for (std::string_view tok : split_char(sentence.text(), ' ')) tokens.emplace_back(tok);
    const bool clean = !sentence.text().empty() &&
                       std::none_of(tokens.begin(), tokens.end(), [](const std::string& t) {
                         return t.empty() || t.find_first_of("\t\n\r") != std::string::npos;
                       });
    if (!clean) {
      throw ValidationError("sentence " + std::to_string(s) +
                            " is not a single-space-joined token sequence");
    }
    const std::vector<std::string> tags = bio_from_spans(tokens, sentence.spans());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      out += tokens[i];
      out += '\t';
      out += tags[i];
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

AnnotatedSentence parse_span_json(std::string_view line) {
  const json doc = parse_json(line);
  if (!doc.is_object()) throw ParseError("span-JSON record must be an object");
  const std::string where = "record";
  std::string text = require_string(doc, "text", where);

  std::vector<LabeledSpan> spans;
  if (const auto it = doc.find("spans"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("\"spans\" must be an array");
    for (const json& s : *it) {
      if (!s.is_object()) throw ParseError("span must be an object");
      const std::string span_where = "span " + std::to_string(spans.size());
      spans.push_back({spans.size(), require_index(s, "start", span_where),
                       require_index(s, "end", span_where),
                       require_string(s, "label", span_where)});
    }
  }

  Meta meta;
  if (const auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("\"meta\" must be an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) throw ParseError("meta value for '" + key + "' must be a string");
      meta.emplace(key, value.get<std::string>());
    }
  }

  std::vector<RelationLink> relations;
  if (const auto it = doc.find("relations"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("\"relations\" must be an array");
    for (const json& r : *it) {
      if (!r.is_object()) throw ParseError("relation must be an object");
      relations.push_back({require_string(r, "kind", "relation"), require_index(r, "head", "relation"),
                           require_index(r, "tail", "relation")});
    }
  }
  return make_sentence(std::move(text), std::move(spans), std::move(meta), std::move(relations));
}

std::string emit_span_json(const AnnotatedSentence& sentence) {
  json spans = json::array();
  for (const LabeledSpan& span : sentence.spans()) {
    spans.push_back({{"start", span.start}, {"end", span.end}, {"label", span.label}});
  }
  json doc = {{"text", sentence.text()}, {"spans", std::move(spans)}, {"meta", json::object()}};
  for (const auto& [key, value] : sentence.meta()) doc["meta"][key] = value;
  if (!sentence.relations().empty()) {
    json relations = json::array();
    for (const RelationLink& link : sentence.relations()) {
      relations.push_back(
          {{"kind", link.kind}, {"head", link.head_span_id}, {"tail", link.tail_span_id}});
    }
    doc["relations"] = std::move(relations);
  }
  return doc.dump();
}

std::vector<AnnotatedSentence> parse_span_jsonl(std::string_view text) {
  std::vector<AnnotatedSentence> sentences;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (is_blank(line)) return;
    try {
      sentences.push_back(parse_span_json(line));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    }
  });
  return sentences;
}

std::string emit_span_jsonl(std::span<const AnnotatedSentence> sentences) {
  std::string out;
  for (const AnnotatedSentence& sentence : sentences) {
    out += emit_span_json(sentence);
    out += '\n';
  }
  return out;
}

SquadCorpus parse_squad(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw ParseError("SQuAD document must be an object");
  SquadCorpus corpus;
  if (const auto it = doc.find("version"); it != doc.end() && it->is_string()) {
    corpus.version = it->get<std::string>();
  }
  const json& data = require(doc, "data", "document");
  if (!data.is_array()) throw ParseError("\"data\" must be an array");

  for (const json& article : data) {
    std::string title;
    if (const auto it = article.find("title"); it != article.end() && it->is_string()) {
      title = it->get<std::string>();
    }
    for (const json& paragraph : require(article, "paragraphs", "article")) {
      const std::string context = require_string(paragraph, "context", "paragraph");
      for (const json& qa : require(paragraph, "qas", "paragraph")) {
        QaExample ex;
        ex.id = require_string(qa, "id", "qa");
        const std::string where = "example " + ex.id;
        ex.title = title;
        ex.context = context;
        ex.question = require_string(qa, "question", where);
        const json& answers = require(qa, "answers", where);
        if (!answers.is_array() || answers.size() != 1) {
          throw ParseError(where + ": expected exactly one answer");
        }
        const std::string answer = require_string(answers[0], "text", where);
        const std::size_t start = require_index(answers[0], "answer_start", where);
        const std::size_t end = start + utf8::length(answer);
        ex.answer = LabeledSpan{0, start, end, std::string(kAnswerLabel)};
        if (answer.empty() || end > utf8::length(context) ||
            utf8::substr(context, start, end) != answer) {
          throw ValidationError(where + ": answer text does not match context at answer_start " +
                                std::to_string(start) + " (offset mismatch)");
        }
        corpus.examples.push_back(std::move(ex));
      }
    }
  }
  return corpus;
}

std::string emit_squad(const SquadCorpus& corpus) {
  json data = json::array();
  const std::string* title = nullptr;
  const std::string* context = nullptr;
  for (const QaExample& ex : corpus.examples) {
    validate(ex);
    if (title == nullptr || *title != ex.title) {
      json article = {{"paragraphs", json::array()}};
      if (!ex.title.empty()) article["title"] = ex.title;
      data.push_back(std::move(article));
      title = &ex.title;
      context = nullptr;
    }
    json& paragraphs = data.back()["paragraphs"];
    if (context == nullptr || *context != ex.context) {
      paragraphs.push_back({{"context", ex.context}, {"qas", json::array()}});
      context = &ex.context;
    }
    paragraphs.back()["qas"].push_back(
        {{"id", ex.id},
         {"question", ex.question},
         {"answers", json::array({{{"text", answer_text(ex)}, {"answer_start", ex.answer.start}}})}});
  }
  json doc = {{"data", std::move(data)}};
  if (!corpus.version.empty()) doc["version"] = corpus.version;
  return doc.dump();
}

}  // namespace spanbridge
