#ifndef REFEVAL_UTF8_HPP
#define REFEVAL_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace refeval::utf8 {

// Decodes UTF-8 into codepoints. Invalid bytes decode as U+FFFD so malformed
// input degrades instead of aborting a corpus sweep.
std::vector<uint32_t> decode(std::string_view text);

std::string encode(const std::vector<uint32_t>& codepoints);

// Whitespace set used for token splitting: ASCII whitespace plus the Unicode
// space separators (NBSP, NEL, en/em spaces, ideographic space, ...).
bool is_space(uint32_t cp);

// Simple (1:1) lowercase mapping covering ASCII, Latin-1 Supplement, Latin
// Extended-A, Greek and Cyrillic. Other codepoints pass through unchanged.
uint32_t to_lower(uint32_t cp);

std::string lowercase(std::string_view text);

}  // namespace refeval::utf8

#endif  // REFEVAL_UTF8_HPP
