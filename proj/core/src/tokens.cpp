#include "spanbridge/tokens.hpp"

#include "spanbridge/utf8.hpp"

namespace spanbridge {
namespace {

bool is_space(char c) noexcept {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

}  // namespace

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > begin) tokens.emplace_back(text.substr(begin, i - begin));
  }
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<CodepointRange> token_offsets(const std::vector<std::string>& tokens) {
  std::vector<CodepointRange> out;
  out.reserve(tokens.size());
  std::size_t pos = 0;
  for (const std::string& token : tokens) {
    const std::size_t n = utf8::length(token);
    out.push_back({pos, pos + n});
    pos += n + 1;
  }
  return out;
}

std::optional<TokenRange> token_range_for(const std::vector<CodepointRange>& offsets,
                                          std::size_t start, std::size_t end) {
  std::optional<std::size_t> first;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!first && offsets[i].start == start) first = i;
    if (first && offsets[i].end == end) return TokenRange{*first, i + 1};
    if (offsets[i].start > end) break;
  }
  return std::nullopt;
}

}  // namespace spanbridge
