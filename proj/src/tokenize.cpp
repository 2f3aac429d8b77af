#include "refeval/tokenize.hpp"

#include <array>

#include "refeval/utf8.hpp"

namespace refeval {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Punctuation class of the first 13a rule: ASCII ranges {-~ [-` space-& (-+
// :-@ plus '/'. Apostrophe, comma, period and dash are handled separately.
constexpr std::array<bool, 128> make_punct_table() {
  std::array<bool, 128> t{};
  auto range = [&t](unsigned char a, unsigned char b) {
    for (unsigned char c = a; c <= b; ++c) t[c] = true;
  };
  range(0x20, 0x26);
  range(0x28, 0x2B);
  t[0x2F] = true;
  range(0x3A, 0x40);
  range(0x5B, 0x60);
  range(0x7B, 0x7E);
  return t;
}

constexpr auto kPunct13a = make_punct_table();

bool is_punct_13a(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && kPunct13a[u];
}

// Each pass reproduces one left-to-right, non-overlapping regex substitution
// of the 13a rule set. Bytes outside ASCII never match any rule, so scanning
// bytes and scanning codepoints give identical results.
std::string pass_split_punct(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char c : s) {
    if (is_punct_13a(c)) {
      out.push_back(' ');
      out.push_back(c);
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

// ([^0-9])([.,]) -> "\1 \2 "
std::string pass_period_comma_after(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 16);
  size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && !is_digit(s[i]) && (s[i + 1] == '.' || s[i + 1] == ',')) {
      out.push_back(s[i]);
      out.push_back(' ');
      out.push_back(s[i + 1]);
      out.push_back(' ');
      i += 2;
    } else {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

// ([.,])([^0-9]) -> " \1 \2"
std::string pass_period_comma_before(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 16);
  size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && (s[i] == '.' || s[i] == ',') && !is_digit(s[i + 1])) {
      out.push_back(' ');
      out.push_back(s[i]);
      out.push_back(' ');
      out.push_back(s[i + 1]);
      i += 2;
    } else {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

// ([0-9])(-) -> "\1 \2 "
std::string pass_dash_after_digit(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && is_digit(s[i]) && s[i + 1] == '-') {
      out.push_back(s[i]);
      out.push_back(' ');
      out.push_back('-');
      out.push_back(' ');
      i += 2;
    } else {
      out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

std::vector<std::string> split_unicode_whitespace(std::string_view s) {
  std::vector<std::string> tokens;
  auto cps = utf8::decode(s);
  std::vector<uint32_t> current;
  for (uint32_t cp : cps) {
    if (utf8::is_space(cp)) {
      if (!current.empty()) {
        tokens.push_back(utf8::encode(current));
        current.clear();
      }
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) tokens.push_back(utf8::encode(current));
  return tokens;
}

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view line) {
  std::string s(line);
  replace_all(s, "<skipped>", "");
  replace_all(s, "-\n", "");
  replace_all(s, "\n", " ");
  if (s.find('&') != std::string::npos) {
    replace_all(s, "&quot;", "\"");
    replace_all(s, "&amp;", "&");
    replace_all(s, "&lt;", "<");
    replace_all(s, "&gt;", ">");
  }
  s = " " + s + " ";
  s = pass_split_punct(s);
  s = pass_period_comma_after(s);
  s = pass_period_comma_before(s);
  s = pass_dash_after_digit(s);
  return split_unicode_whitespace(s);
}

std::vector<std::string> tokenize_tercom(std::string_view line) {
  return split_unicode_whitespace(utf8::lowercase(line));
}

std::vector<uint32_t> chrf_codepoints(std::string_view line) {
  std::vector<uint32_t> out;
  for (uint32_t cp : utf8::decode(line)) {
    if (!utf8::is_space(cp)) out.push_back(cp);
  }
  return out;
}

}  // namespace refeval
