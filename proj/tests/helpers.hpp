// Shared fixtures for the test binaries: tiny in-memory tables, a
// deterministic pseudo-random source, and an exhaustive segmentation
// scorer used as the oracle for the DP segmenter.
#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "zhattack/resources.hpp"
#include "zhattack/text_core.hpp"
#include "zhattack/utf8.hpp"

namespace testutil {

// splitmix64; good enough to drive randomized test instances.
class Rand {
 public:
  explicit Rand(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::string write_temp(const std::string& name,
                              const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "zhattack_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p.string();
}

inline double log_freq(std::int64_t freq, std::int64_t total) {
  if (total <= 0) total = 1;
  if (freq <= 0) freq = 1;
  return std::log(static_cast<double>(freq)) -
         std::log(static_cast<double>(total));
}

// Right-associated score of one tokenization, matching the segmenter's
// suffix-DP summation order so exact float comparison is meaningful.
inline double right_fold_score(const std::vector<std::string>& tokens,
                               const zhattack::Lexicon& lex) {
  double acc = 0.0;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it)
    acc = log_freq(lex.contains(*it) ? lex.freq(*it) : 0, lex.total_freq) + acc;
  return acc;
}

// Exhaustively enumerates every segmentation of `cps` into lexicon words
// and single-character fallbacks and returns the best achievable score.
inline double best_enumerated_score(const std::u32string& cps,
                                    const zhattack::Lexicon& lex) {
  struct Walker {
    const std::u32string& cps;
    const zhattack::Lexicon& lex;
    std::vector<std::string> current;
    double best = -std::numeric_limits<double>::infinity();

    void go(std::size_t i) {
      if (i == cps.size()) {
        best = std::max(best, right_fold_score(current, lex));
        return;
      }
      for (std::size_t len = 1; i + len <= cps.size(); ++len) {
        std::string word =
            zhattack::utf8_encode(std::u32string_view(cps).substr(i, len));
        if (len > 1 && !lex.contains(word)) continue;
        current.push_back(word);
        go(i + len);
        current.pop_back();
      }
    }
  };
  Walker w{cps, lex};
  w.go(0);
  return w.best;
}

}  // namespace testutil
