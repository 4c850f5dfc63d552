#pragma once

#include <string>
#include <vector>

#include "zhattack/resources.hpp"

namespace zhattack {

inline constexpr const char* kDefaultUnk = "⟨unk⟩";  // ⟨unk⟩

struct Token {
  std::string surface;
  std::size_t char_start = 0;  // inclusive, Unicode scalar values
  std::size_t char_end = 0;    // exclusive
  bool is_lexicon_word = false;
};

// An input text plus its contiguous, non-overlapping word tokens.
struct SegmentedText {
  std::string original;
  std::vector<Token> tokens;
};

// Dictionary segmentation: DAG over lexicon matches, dynamic programming on
// max sum of log(freq/total_freq) with single-character OOV fallback at
// log(1/total_freq). Ties prefer the segmentation whose first differing
// token is longer. Runs of ASCII alphanumerics outside the lexicon and
// non-lexicon punctuation come out as their own tokens.
SegmentedText segment(const std::string& text, const Lexicon& lexicon);

// Replaces one token's surface and shifts downstream offsets. No
// re-segmentation. Throws std::out_of_range on a bad index.
SegmentedText replace_token(const SegmentedText& seg, std::size_t index,
                            const std::string& replacement);

// Flattened text with token `index` replaced by the UNK marker.
std::string with_unk(const SegmentedText& seg, std::size_t index,
                     const std::string& unk = kDefaultUnk);

}  // namespace zhattack
