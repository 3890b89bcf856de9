#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spanbridge {

/// Half-open range of token indices.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

/// Half-open range of codepoint offsets.
struct CodepointRange {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const CodepointRange&, const CodepointRange&) = default;
};

/// Splits on runs of ASCII whitespace.
std::vector<std::string> split_whitespace(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

/// Codepoint ranges of tokens in a single-space-joined text.
std::vector<CodepointRange> token_offsets(const std::vector<std::string>& tokens);

/// Token range exactly covering [start, end), or nullopt if the range cuts a token.
std::optional<TokenRange> token_range_for(const std::vector<CodepointRange>& offsets,
                                          std::size_t start, std::size_t end);

}  // namespace spanbridge
