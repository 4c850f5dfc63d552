#include "zhattack/transforms.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>

#include "zhattack/rng.hpp"
#include "zhattack/utf8.hpp"

namespace zhattack {

namespace {

// k-element sample without replacement via partial Fisher-Yates.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t k,
                                          DetRng& rng) {
  k = std::min(k, pool.size());
  for (std::size_t j = 0; j < k; ++j)
    std::swap(pool[j], pool[j + rng.bounded(pool.size() - j)]);
  pool.resize(k);
  return pool;
}

const Token& checked_token(const SegmentedText& seg, std::size_t i) {
  if (i >= seg.tokens.size())
    throw std::out_of_range("token index " + std::to_string(i) +
                            " out of range");
  return seg.tokens[i];
}

// All single-character swap words for token i, given a per-character
// replacement pool. Order: character position, then pool order.
std::vector<std::string> single_swap_words(
    const std::string& surface,
    const std::function<std::vector<char32_t>(char32_t)>& char_pool) {
  std::u32string cps = utf8_decode(surface);
  std::vector<std::string> out;
  for (std::size_t p = 0; p < cps.size(); ++p) {
    for (char32_t h : char_pool(cps[p])) {
      std::u32string swapped = cps;
      swapped[p] = h;
      std::string word = utf8_encode(swapped);
      if (word != surface &&
          std::find(out.begin(), out.end(), word) == out.end())
        out.push_back(word);
    }
  }
  return out;
}

std::vector<Candidate> sampled_swap_candidates(const SegmentedText& seg,
                                               std::size_t i, int k,
                                               TransformKind kind,
                                               std::vector<std::string> pool,
                                               std::uint64_t rng_seed) {
  DetRng rng(rng_seed, seg.original, i);
  auto picked =
      sample_without_replacement(std::move(pool), static_cast<std::size_t>(std::max(k, 0)), rng);
  std::vector<Candidate> out;
  out.reserve(picked.size());
  for (std::size_t r = 0; r < picked.size(); ++r)
    out.push_back({i, std::move(picked[r]), kind, 1.0 / static_cast<double>(r + 1)});
  return out;
}

}  // namespace

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::HowNet: return "hownet";
    case TransformKind::Mlm: return "mlm";
    case TransformKind::Homophone: return "homophone";
    case TransformKind::Morphonym: return "morphonym";
    case TransformKind::Composite: return "composite";
  }
  return "?";
}

TransformKind transform_kind_from_string(const std::string& s) {
  if (s == "hownet") return TransformKind::HowNet;
  if (s == "mlm") return TransformKind::Mlm;
  if (s == "homophone") return TransformKind::Homophone;
  if (s == "morphonym") return TransformKind::Morphonym;
  if (s == "composite") return TransformKind::Composite;
  throw std::invalid_argument("unknown transformation '" + s + "'");
}

StubMlmClient::StubMlmClient(const Lexicon& lexicon,
                             const EmbeddingTable& embeddings)
    : lexicon_(lexicon), embeddings_(embeddings) {
  for (const auto& w : lexicon.order)
    by_freq_.emplace_back(w, lexicon.freq(w));
  std::stable_sort(by_freq_.begin(), by_freq_.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
}

std::vector<MlmFill> StubMlmClient::fill(const std::string& masked_text, int k) {
  // Mean embedding of the unmasked context tokens.
  std::vector<double> context(embeddings_.dim, 0.0);
  std::size_t covered = 0;
  std::string unmasked = masked_text;
  for (std::size_t at; (at = unmasked.find("<mask>")) != std::string::npos;)
    unmasked.erase(at, 6);
  if (!unmasked.empty()) {
    for (const Token& tok : segment(unmasked, lexicon_).tokens) {
      if (const auto* vec = embeddings_.find(tok.surface)) {
        for (std::size_t d = 0; d < context.size(); ++d) context[d] += (*vec)[d];
        ++covered;
      }
    }
  }
  double cnorm = 0.0;
  if (covered > 0) {
    for (double& v : context) v /= static_cast<double>(covered);
    for (double v : context) cnorm += v * v;
    cnorm = std::sqrt(cnorm);
  }

  // Score every absent lexicon word by cosine to the context; frequency
  // order (the by_freq_ iteration order) breaks ties, so a zero context
  // degrades to a plain frequency ranking.
  struct Scored {
    const std::string* word;
    double sim;
  };
  std::vector<Scored> scored;
  for (const auto& [w, f] : by_freq_) {
    if (masked_text.find(w) != std::string::npos) continue;
    double sim = 0.0;
    const auto* vec = embeddings_.find(w);
    if (vec && cnorm > 0.0) {
      double dot = 0.0, wnorm = 0.0;
      for (std::size_t d = 0; d < context.size(); ++d) {
        dot += (*vec)[d] * context[d];
        wnorm += (*vec)[d] * (*vec)[d];
      }
      wnorm = std::sqrt(wnorm);
      if (wnorm > 0.0) sim = dot / (wnorm * cnorm);
    }
    scored.push_back({&w, sim});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.sim > b.sim; });
  if (k >= 0 && scored.size() > static_cast<std::size_t>(k)) scored.resize(k);

  // Softmax over the retained scores gives a proper fill distribution.
  std::vector<MlmFill> fills;
  double total = 0.0;
  for (const auto& s : scored) {
    double e = std::exp(s.sim);
    fills.push_back({*s.word, e});
    total += e;
  }
  if (total > 0.0)
    for (auto& fill : fills) fill.prob /= total;
  return fills;
}

std::vector<Candidate> hownet_candidates(const SegmentedText& seg,
                                         std::size_t i, int k,
                                         const SememeLexicon& sememes,
                                         const Lexicon& lexicon) {
  const Token& tok = checked_token(seg, i);
  if (!sememes.contains(tok.surface)) return {};

  struct Scored {
    std::string word;
    double sim;
    std::int64_t freq;
  };
  std::vector<Scored> scored;
  for (const auto& w : sememes.order) {
    if (w == tok.surface) continue;
    auto sim = sememe_similarity(tok.surface, w, sememes);
    if (sim && *sim > 0.0) scored.push_back({w, *sim, lexicon.freq(w)});
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return a.freq > b.freq;
  });
  if (k >= 0 && scored.size() > static_cast<std::size_t>(k)) scored.resize(k);

  std::vector<Candidate> out;
  out.reserve(scored.size());
  for (auto& s : scored)
    out.push_back({i, std::move(s.word), TransformKind::HowNet, s.sim});
  return out;
}

std::vector<Candidate> mlm_candidates(const SegmentedText& seg, std::size_t i,
                                      int k, MlmClient& client) {
  const Token& tok = checked_token(seg, i);
  std::string masked;
  for (std::size_t t = 0; t < seg.tokens.size(); ++t)
    masked += (t == i) ? std::string("<mask>") : seg.tokens[t].surface;

  std::vector<Candidate> out;
  for (const auto& fill : client.fill(masked, k)) {
    if (static_cast<int>(out.size()) >= k) break;
    if (fill.token.empty() || fill.token == tok.surface) continue;
    out.push_back({i, fill.token, TransformKind::Mlm, fill.prob});
  }
  return out;
}

std::vector<Candidate> homophone_candidates(const SegmentedText& seg,
                                            std::size_t i, int k,
                                            const PinyinTable& table,
                                            std::uint64_t rng_seed) {
  const Token& tok = checked_token(seg, i);
  auto pool = single_swap_words(
      tok.surface, [&](char32_t c) { return homophone_chars(c, table); });
  return sampled_swap_candidates(seg, i, k, TransformKind::Homophone,
                                 std::move(pool), rng_seed);
}

std::vector<Candidate> morphonym_candidates(const SegmentedText& seg,
                                            std::size_t i, int k,
                                            const ComponentTable& table,
                                            std::uint64_t rng_seed) {
  const Token& tok = checked_token(seg, i);
  auto pool = single_swap_words(
      tok.surface, [&](char32_t c) { return morphonym_chars(c, table); });
  return sampled_swap_candidates(seg, i, k, TransformKind::Morphonym,
                                 std::move(pool), rng_seed);
}

std::vector<Candidate> composite_candidates(const SegmentedText& seg,
                                            std::size_t i,
                                            const TransformConfig& config,
                                            const ResourceTables& resources,
                                            MlmClient* mlm,
                                            std::uint64_t rng_seed) {
  std::vector<Candidate> all = hownet_candidates(
      seg, i, config.hownet_k, resources.sememes, resources.lexicon);
  if (mlm) {
    try {
      auto mc = mlm_candidates(seg, i, config.mlm_k, *mlm);
      all.insert(all.end(), mc.begin(), mc.end());
    } catch (const MlmUnavailableError&) {
      // transformation unavailable, keep the other three legs
    }
  }
  auto hc = homophone_candidates(seg, i, config.homophone_k, resources.pinyin,
                                 rng_seed);
  all.insert(all.end(), hc.begin(), hc.end());
  auto mo = morphonym_candidates(seg, i, config.morphonym_k,
                                 resources.components, rng_seed);
  all.insert(all.end(), mo.begin(), mo.end());

  std::vector<Candidate> out;
  for (auto& c : all) {
    bool dup = std::any_of(out.begin(), out.end(), [&](const Candidate& o) {
      return o.replacement == c.replacement;
    });
    if (!dup) out.push_back(std::move(c));
  }
  return out;
}

std::vector<Candidate> generate_candidates(const SegmentedText& seg,
                                           std::size_t i,
                                           const TransformConfig& config,
                                           const ResourceTables& resources,
                                           MlmClient* mlm,
                                           std::uint64_t rng_seed) {
  switch (config.kind) {
    case TransformKind::HowNet:
      return hownet_candidates(seg, i, config.hownet_k, resources.sememes,
                               resources.lexicon);
    case TransformKind::Mlm:
      if (!mlm) throw std::runtime_error("MLM transformation needs a client");
      return mlm_candidates(seg, i, config.mlm_k, *mlm);
    case TransformKind::Homophone:
      return homophone_candidates(seg, i, config.homophone_k, resources.pinyin,
                                  rng_seed);
    case TransformKind::Morphonym:
      return morphonym_candidates(seg, i, config.morphonym_k,
                                  resources.components, rng_seed);
    case TransformKind::Composite:
      return composite_candidates(seg, i, config, resources, mlm, rng_seed);
  }
  return {};
}

}  // namespace zhattack
