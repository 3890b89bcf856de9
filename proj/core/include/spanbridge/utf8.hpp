#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace spanbridge::utf8 {

// All offsets in the toolkit count Unicode scalar values, never bytes.

/// Decodes UTF-8; throws ParseError on ill-formed input (overlongs, surrogates).
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

void append(std::string& out, char32_t cp);

/// Number of codepoints. Throws ParseError on ill-formed input.
std::size_t length(std::string_view text);

/// Codepoint-indexed substring [start, end).
std::string substr(std::string_view text, std::size_t start, std::size_t end);

bool is_valid(std::string_view text) noexcept;

/// NFC normalization (ICU).
std::string nfc(std::string_view text);

/// Simple per-codepoint case folding; preserves codepoint count.
std::u32string fold_case(std::u32string_view text);

}  // namespace spanbridge::utf8
