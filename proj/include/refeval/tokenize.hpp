#ifndef REFEVAL_TOKENIZE_HPP
#define REFEVAL_TOKENIZE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace refeval {

// mteval-13a tokenization: unescapes a few HTML entities, then splits ASCII
// punctuation into separate tokens, with period/comma kept inside numbers
// and dashes split only after digits. Case is preserved.
std::vector<std::string> tokenize_13a(std::string_view line);

// Tercom-style tokenization for TER: lowercase, split on whitespace.
// Punctuation stays attached to its word.
std::vector<std::string> tokenize_tercom(std::string_view line);

// chrF preprocessing: every whitespace codepoint removed, the rest returned
// as a codepoint sequence for character n-gram extraction.
std::vector<uint32_t> chrf_codepoints(std::string_view line);

}  // namespace refeval

#endif  // REFEVAL_TOKENIZE_HPP
