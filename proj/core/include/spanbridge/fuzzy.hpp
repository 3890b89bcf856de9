#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace spanbridge {

/// a[a_start, a_start+size) == b[b_start, b_start+size)
struct MatchingBlock {
  std::size_t a_start = 0;
  std::size_t b_start = 0;
  std::size_t size = 0;

  friend bool operator==(const MatchingBlock&, const MatchingBlock&) = default;
};

/// Ratcliff-Obershelp matching blocks: take the longest common substring
/// (earliest in `a`, then earliest in `b`, on ties) and recurse on both sides.
/// No junk heuristics. Blocks are returned in increasing order.
std::vector<MatchingBlock> matching_blocks(std::u32string_view a, std::u32string_view b);

/// Total size of the matching blocks.
std::size_t matched_length(std::u32string_view a, std::u32string_view b);

/// 2*M / (|a|+|b|) over codepoints; 1.0 for two empty strings.
double fuzzy_ratio(std::u32string_view a, std::u32string_view b);
double fuzzy_ratio(std::string_view a_utf8, std::string_view b_utf8);

}  // namespace spanbridge
