#include "zhattack/resources.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "zhattack/utf8.hpp"

namespace zhattack {

namespace {

[[noreturn]] void parse_error(const std::string& path, std::size_t lineno,
                              const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

// Calls fn(line, lineno) for every non-comment, non-blank line.
template <typename Fn>
void for_each_record(const std::string& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fn(line, lineno);
  }
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

char32_t single_char(const std::string& field, const std::string& path,
                     std::size_t lineno) {
  std::u32string cps = utf8_decode(field);
  if (cps.size() != 1)
    parse_error(path, lineno, "expected a single character, got '" + field + "'");
  return cps[0];
}

}  // namespace

void Lexicon::add(const std::string& word, std::int64_t freq) {
  auto [it, inserted] = entries.emplace(word, freq);
  if (inserted) {
    order.push_back(word);
    total_freq += freq;
    max_word_chars = std::max(max_word_chars, utf8_length(word));
  } else if (it->second != freq) {
    throw std::runtime_error("duplicate lexicon entry with conflicting frequency: " + word);
  }
}

void PinyinTable::add(char32_t c, const std::string& syllable) {
  auto& syls = by_char[c];
  if (std::find(syls.begin(), syls.end(), syllable) != syls.end()) return;
  syls.push_back(syllable);
  by_syllable[syllable].push_back(c);
}

void ComponentTable::add(char32_t c, const std::string& component) {
  auto& comps = by_char[c];
  if (std::find(comps.begin(), comps.end(), component) != comps.end()) return;
  comps.push_back(component);
  by_component[component].push_back(c);
}

void SememeLexicon::add(const std::string& word, const std::string& sememe) {
  auto [it, inserted] = by_word.emplace(word, std::set<std::string>{});
  if (inserted) order.push_back(word);
  it->second.insert(sememe);
}

Lexicon load_lexicon(const std::string& path) {
  Lexicon lex;
  for_each_record(path, [&](const std::string& line, std::size_t lineno) {
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty())
      parse_error(path, lineno, "expected 'word<TAB>frequency'");
    std::int64_t freq = 0;
    try {
      freq = std::stoll(fields[1]);
    } catch (const std::exception&) {
      parse_error(path, lineno, "bad frequency '" + fields[1] + "'");
    }
    if (freq <= 0) parse_error(path, lineno, "frequency must be positive");
    try {
      lex.add(fields[0], freq);
    } catch (const std::runtime_error& e) {
      parse_error(path, lineno, e.what());
    }
  });
  return lex;
}

PinyinTable load_pinyin(const std::string& path) {
  PinyinTable table;
  for_each_record(path, [&](const std::string& line, std::size_t lineno) {
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[1].empty())
      parse_error(path, lineno, "expected 'char<TAB>syllable'");
    table.add(single_char(fields[0], path, lineno), fields[1]);
  });
  return table;
}

ComponentTable load_components(const std::string& path) {
  ComponentTable table;
  for_each_record(path, [&](const std::string& line, std::size_t lineno) {
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[1].empty())
      parse_error(path, lineno, "expected 'char<TAB>component'");
    table.add(single_char(fields[0], path, lineno), fields[1]);
  });
  return table;
}

SememeLexicon load_sememes(const std::string& path) {
  SememeLexicon lex;
  for_each_record(path, [&](const std::string& line, std::size_t lineno) {
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      parse_error(path, lineno, "expected 'word<TAB>sememe'");
    lex.add(fields[0], fields[1]);
  });
  return lex;
}

StopwordSet load_stopwords(const std::string& path) {
  StopwordSet set;
  for_each_record(path, [&](const std::string& line, std::size_t lineno) {
    auto fields = split_tabs(line);
    if (fields.size() != 1 || fields[0].empty())
      parse_error(path, lineno, "expected one word per line");
    set.words.insert(fields[0]);
  });
  if (set.words.empty())
    throw std::runtime_error(path + ": stopword file has no entries");
  return set;
}

EmbeddingTable load_embeddings(const std::string& path) {
  EmbeddingTable table;
  bool have_dim = false;
  for_each_record(path, [&](const std::string& line, std::size_t lineno) {
    if (!have_dim) {
      try {
        long dim = std::stol(line);
        if (dim <= 0) throw std::invalid_argument("nonpositive");
        table.dim = static_cast<std::size_t>(dim);
      } catch (const std::exception&) {
        parse_error(path, lineno, "bad dimension '" + line + "'");
      }
      have_dim = true;
      return;
    }
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty())
      parse_error(path, lineno, "expected 'token<TAB>values'");
    std::vector<double> vec;
    vec.reserve(table.dim);
    std::istringstream vs(fields[1]);
    double v;
    while (vs >> v) {
      if (!std::isfinite(v)) parse_error(path, lineno, "non-finite value");
      vec.push_back(v);
    }
    if (vec.size() != table.dim)
      parse_error(path, lineno, "expected " + std::to_string(table.dim) +
                                    " values, got " + std::to_string(vec.size()));
    auto it = table.by_token.find(fields[0]);
    if (it != table.by_token.end()) {
      if (it->second != vec)
        parse_error(path, lineno, "duplicate token with conflicting vector");
    } else {
      table.by_token.emplace(fields[0], std::move(vec));
    }
  });
  if (!have_dim) throw std::runtime_error(path + ": missing dimension header");
  return table;
}

ResourceTables ResourceTables::load_dir(const std::string& dir) {
  ResourceTables r;
  r.lexicon = load_lexicon(dir + "/lexicon.tsv");
  r.pinyin = load_pinyin(dir + "/pinyin.tsv");
  r.components = load_components(dir + "/components.tsv");
  r.sememes = load_sememes(dir + "/sememes.tsv");
  r.stopwords = load_stopwords(dir + "/stopwords.tsv");
  r.embeddings = load_embeddings(dir + "/embeddings.tsv");
  return r;
}

std::optional<double> sememe_similarity(const std::string& w1,
                                        const std::string& w2,
                                        const SememeLexicon& lex) {
  auto it1 = lex.by_word.find(w1);
  auto it2 = lex.by_word.find(w2);
  if (it1 == lex.by_word.end() || it2 == lex.by_word.end()) return std::nullopt;
  const auto& s1 = it1->second;
  const auto& s2 = it2->second;
  std::size_t inter = 0;
  for (const auto& s : s1) inter += s2.count(s);
  std::size_t uni = s1.size() + s2.size() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<char32_t> homophone_chars(char32_t c, const PinyinTable& table) {
  std::vector<char32_t> out;
  auto it = table.by_char.find(c);
  if (it == table.by_char.end()) return out;
  for (const auto& syl : it->second) {
    auto sit = table.by_syllable.find(syl);
    if (sit == table.by_syllable.end()) continue;
    for (char32_t cand : sit->second) {
      if (cand == c) continue;
      if (std::find(out.begin(), out.end(), cand) == out.end())
        out.push_back(cand);
    }
  }
  return out;
}

std::vector<char32_t> morphonym_chars(char32_t c, const ComponentTable& table) {
  auto it = table.by_char.find(c);
  if (it == table.by_char.end()) return {};
  // shared-count per candidate, preserving first-seen table order
  std::vector<std::pair<char32_t, std::size_t>> counts;
  for (const auto& comp : it->second) {
    auto cit = table.by_component.find(comp);
    if (cit == table.by_component.end()) continue;
    for (char32_t cand : cit->second) {
      if (cand == c) continue;
      auto pos = std::find_if(counts.begin(), counts.end(),
                              [&](const auto& p) { return p.first == cand; });
      if (pos == counts.end())
        counts.emplace_back(cand, 1);
      else
        ++pos->second;
    }
  }
  std::stable_sort(counts.begin(), counts.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<char32_t> out;
  out.reserve(counts.size());
  for (const auto& [cand, n] : counts) out.push_back(cand);
  return out;
}

}  // namespace zhattack
