#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace zhattack {

// Word-frequency lexicon backing the segmenter.
struct Lexicon {
  std::unordered_map<std::string, std::int64_t> entries;
  std::vector<std::string> order;  // file order, used for tie-breaks
  std::int64_t total_freq = 0;
  std::size_t max_word_chars = 0;  // in Unicode scalar values

  void add(const std::string& word, std::int64_t freq);
  bool contains(const std::string& word) const {
    return entries.count(word) > 0;
  }
  std::int64_t freq(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? 0 : it->second;
  }
};

// Character -> toneless pinyin syllables and the inverse index.
struct PinyinTable {
  std::unordered_map<char32_t, std::vector<std::string>> by_char;
  std::unordered_map<std::string, std::vector<char32_t>> by_syllable;

  void add(char32_t c, const std::string& syllable);
};

// Character -> glyph components and the inverse index.
struct ComponentTable {
  std::unordered_map<char32_t, std::vector<std::string>> by_char;
  std::unordered_map<std::string, std::vector<char32_t>> by_component;

  void add(char32_t c, const std::string& component);
};

// Word -> sememe annotations, HowNet style.
struct SememeLexicon {
  std::unordered_map<std::string, std::set<std::string>> by_word;
  std::vector<std::string> order;  // file order

  void add(const std::string& word, const std::string& sememe);
  bool contains(const std::string& word) const {
    return by_word.count(word) > 0;
  }
};

struct EmbeddingTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, std::vector<double>> by_token;

  const std::vector<double>* find(const std::string& token) const {
    auto it = by_token.find(token);
    return it == by_token.end() ? nullptr : &it->second;
  }
};

struct StopwordSet {
  std::unordered_set<std::string> words;

  bool contains(const std::string& w) const { return words.count(w) > 0; }
};

// TSV loaders. All throw std::runtime_error with the offending line number
// on malformed input. Lines starting with '#' and blank lines are skipped.
Lexicon load_lexicon(const std::string& path);
PinyinTable load_pinyin(const std::string& path);
ComponentTable load_components(const std::string& path);
SememeLexicon load_sememes(const std::string& path);
StopwordSet load_stopwords(const std::string& path);
EmbeddingTable load_embeddings(const std::string& path);

// Everything the transforms and constraints need, loaded from one directory
// with fixed file names (lexicon.tsv, pinyin.tsv, components.tsv,
// sememes.tsv, stopwords.tsv, embeddings.tsv).
struct ResourceTables {
  Lexicon lexicon;
  PinyinTable pinyin;
  ComponentTable components;
  SememeLexicon sememes;
  StopwordSet stopwords;
  EmbeddingTable embeddings;

  static ResourceTables load_dir(const std::string& dir);
};

// Jaccard similarity of the two words' sememe sets; nullopt when either
// word has no annotation.
std::optional<double> sememe_similarity(const std::string& w1,
                                        const std::string& w2,
                                        const SememeLexicon& lex);

// All characters sharing a toneless syllable with c, excluding c itself,
// in table order, deduplicated.
std::vector<char32_t> homophone_chars(char32_t c, const PinyinTable& table);

// Characters sharing at least one component with c, excluding c, sorted by
// shared-component count descending, then table order.
std::vector<char32_t> morphonym_chars(char32_t c, const ComponentTable& table);

}  // namespace zhattack
