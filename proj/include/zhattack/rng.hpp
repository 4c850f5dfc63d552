#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace zhattack {

std::uint64_t fnv1a(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

// Small deterministic stream, identical across platforms.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(splitmix64(seed)) {}
  DetRng(std::uint64_t seed, std::string_view text, std::uint64_t stream)
      : state_(splitmix64(seed ^ splitmix64(fnv1a(text) ^ splitmix64(stream)))) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  std::size_t bounded(std::size_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t state_;
};

template <typename T>
void det_shuffle(std::vector<T>& v, DetRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.bounded(i)]);
}

}  // namespace zhattack
