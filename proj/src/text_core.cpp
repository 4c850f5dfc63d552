#include "zhattack/text_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zhattack/utf8.hpp"

namespace zhattack {

namespace {

double log_freq(std::int64_t freq, std::int64_t total) {
  if (total <= 0) total = 1;
  if (freq <= 0) freq = 1;  // OOV fallback: log(1/total)
  return std::log(static_cast<double>(freq)) -
         std::log(static_cast<double>(total));
}

}  // namespace

SegmentedText segment(const std::string& text, const Lexicon& lexicon) {
  SegmentedText seg;
  seg.original = text;
  if (text.empty()) return seg;

  const std::u32string cps = utf8_decode(text);
  const std::size_t n = cps.size();
  const std::size_t max_len = std::max<std::size_t>(lexicon.max_word_chars, 1);
  const std::int64_t total = lexicon.total_freq;

  // Suffix DP: best[i] = max score of segmenting cps[i..n), summed
  // right-associated so the achieved maximum is bit-reproducible.
  std::vector<double> best(n + 1, -std::numeric_limits<double>::infinity());
  std::vector<std::size_t> step(n + 1, 1);
  best[n] = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    std::size_t longest = std::min(max_len, n - i);
    for (std::size_t len = longest; len >= 1; --len) {
      std::string word = utf8_encode(std::u32string_view(cps).substr(i, len));
      double s;
      if (lexicon.contains(word)) {
        s = log_freq(lexicon.freq(word), total) + best[i + len];
      } else if (len == 1) {
        s = log_freq(0, total) + best[i + 1];
      } else {
        continue;
      }
      // strict > keeps the longest word on exact ties
      if (s > best[i]) {
        best[i] = s;
        step[i] = len;
      }
    }
  }

  // Extract tokens, merging runs of non-lexicon single ASCII alphanumerics.
  std::size_t i = 0;
  while (i < n) {
    std::size_t len = step[i];
    std::string word = utf8_encode(std::u32string_view(cps).substr(i, len));
    bool in_lex = lexicon.contains(word);
    if (!in_lex && len == 1 && is_ascii_alnum(cps[i])) {
      std::size_t j = i;
      while (j < n && step[j] == 1 && is_ascii_alnum(cps[j]) &&
             !lexicon.contains(utf8_encode(cps[j]))) {
        ++j;
      }
      if (j > i + 1) {
        seg.tokens.push_back(
            {utf8_encode(std::u32string_view(cps).substr(i, j - i)), i, j, false});
        i = j;
        continue;
      }
    }
    seg.tokens.push_back({std::move(word), i, i + len, in_lex});
    i += len;
  }
  return seg;
}

SegmentedText replace_token(const SegmentedText& seg, std::size_t index,
                            const std::string& replacement) {
  if (index >= seg.tokens.size())
    throw std::out_of_range("token index " + std::to_string(index) +
                            " out of range");
  if (replacement.empty())
    throw std::invalid_argument("replacement must be non-empty");

  SegmentedText out;
  out.tokens.reserve(seg.tokens.size());
  std::size_t pos = 0;
  for (std::size_t k = 0; k < seg.tokens.size(); ++k) {
    const Token& t = seg.tokens[k];
    Token nt = t;
    if (k == index) {
      nt.surface = replacement;
      nt.is_lexicon_word = false;
    }
    std::size_t len = utf8_length(nt.surface);
    nt.char_start = pos;
    nt.char_end = pos + len;
    pos += len;
    out.original += nt.surface;
    out.tokens.push_back(std::move(nt));
  }
  return out;
}

std::string with_unk(const SegmentedText& seg, std::size_t index,
                     const std::string& unk) {
  if (index >= seg.tokens.size())
    throw std::out_of_range("token index " + std::to_string(index) +
                            " out of range");
  std::string out;
  for (std::size_t k = 0; k < seg.tokens.size(); ++k)
    out += (k == index) ? unk : seg.tokens[k].surface;
  return out;
}

}  // namespace zhattack
