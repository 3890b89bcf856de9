#include "spanbridge/fuzzy.hpp"

#include <algorithm>

#include "spanbridge/utf8.hpp"

namespace spanbridge {
namespace {

struct Window {
  std::size_t alo, ahi, blo, bhi;
};

// Longest common substring of a[alo,ahi) and b[blo,bhi). Rows are scanned in
// increasing i and j and only a strictly longer run replaces the best, so ties
// resolve to the earliest start in a, then in b.
MatchingBlock longest_match(std::u32string_view a, std::u32string_view b, const Window& w,
                            std::vector<std::size_t>& prev, std::vector<std::size_t>& cur) {
  MatchingBlock best{w.alo, w.blo, 0};
  std::fill(prev.begin() + static_cast<std::ptrdiff_t>(w.blo),
            prev.begin() + static_cast<std::ptrdiff_t>(w.bhi) + 1, 0);
  for (std::size_t i = w.alo; i < w.ahi; ++i) {
    cur[w.blo] = 0;
    for (std::size_t j = w.blo; j < w.bhi; ++j) {
      const std::size_t k = a[i] == b[j] ? prev[j] + 1 : 0;
      cur[j + 1] = k;
      if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::vector<MatchingBlock> matching_blocks(std::u32string_view a, std::u32string_view b) {
  std::vector<MatchingBlock> blocks;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  std::vector<Window> pending{{0, a.size(), 0, b.size()}};
  while (!pending.empty()) {
    const Window w = pending.back();
    pending.pop_back();
    if (w.alo >= w.ahi || w.blo >= w.bhi) continue;
    const MatchingBlock m = longest_match(a, b, w, prev, cur);
    if (m.size == 0) continue;
    blocks.push_back(m);
    pending.push_back({w.alo, m.a_start, w.blo, m.b_start});
    pending.push_back({m.a_start + m.size, w.ahi, m.b_start + m.size, w.bhi});
  }
  std::sort(blocks.begin(), blocks.end(), [](const MatchingBlock& x, const MatchingBlock& y) {
    return x.a_start < y.a_start;
  });

  std::vector<MatchingBlock> merged;
  for (const MatchingBlock& m : blocks) {
    if (!merged.empty() && merged.back().a_start + merged.back().size == m.a_start &&
        merged.back().b_start + merged.back().size == m.b_start) {
      merged.back().size += m.size;
    } else {
      merged.push_back(m);
    }
  }
  return merged;
}

std::size_t matched_length(std::u32string_view a, std::u32string_view b) {
  std::size_t total = 0;
  for (const MatchingBlock& m : matching_blocks(a, b)) total += m.size;
  return total;
}

double fuzzy_ratio(std::u32string_view a, std::u32string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(matched_length(a, b)) / static_cast<double>(total);
}

double fuzzy_ratio(std::string_view a_utf8, std::string_view b_utf8) {
  return fuzzy_ratio(utf8::decode(a_utf8), utf8::decode(b_utf8));
}

}  // namespace spanbridge
