#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace zhattack {

// Decode a UTF-8 byte string into Unicode scalar values. Throws
// std::runtime_error on malformed input.
std::u32string utf8_decode(std::string_view s);

std::string utf8_encode(std::u32string_view cps);
std::string utf8_encode(char32_t cp);

// Number of Unicode scalar values in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

inline bool is_ascii(char32_t cp) { return cp < 0x80; }

inline bool is_ascii_alnum(char32_t cp) {
  return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') ||
         (cp >= 'A' && cp <= 'Z');
}

}  // namespace zhattack
