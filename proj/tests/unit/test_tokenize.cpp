#include <doctest.h>

#include <string>
#include <vector>

#include "refeval/tokenize.hpp"
#include "refeval/utf8.hpp"

using refeval::chrf_codepoints;
using refeval::tokenize_13a;
using refeval::tokenize_tercom;

namespace {
std::vector<std::string> toks(std::initializer_list<const char*> items) {
  return {items.begin(), items.end()};
}
}  // namespace

TEST_CASE("13a splits punctuation but keeps numbers together") {
  // Golden token streams computed with a reference regex implementation of
  // the 13a rule set.
  CHECK(tokenize_13a("Hello, world!") == toks({"Hello", ",", "world", "!"}));
  CHECK(tokenize_13a("The U.S. economy grew 3.5% in 2019[1].") ==
        toks({"The", "U", ".", "S", ".", "economy", "grew", "3.5", "%", "in", "2019", "[", "1",
              "]", "."}));
  CHECK(tokenize_13a("A 12-ton truck--heavy!") ==
        toks({"A", "12", "-", "ton", "truck--heavy", "!"}));
  CHECK(tokenize_13a("on 2.3.2019, we left.") ==
        toks({"on", "2.3.2019", ",", "we", "left", "."}));
  CHECK(tokenize_13a("a.,b c.d 4,000.50") == toks({"a", ".", ",", "b", "c", ".", "d", "4,000.50"}));
  CHECK(tokenize_13a("dash-word 5-6 7 - 8") ==
        toks({"dash-word", "5", "-", "6", "7", "-", "8"}));
  CHECK(tokenize_13a("semi;colon co:lon at@sign") ==
        toks({"semi", ";", "colon", "co", ":", "lon", "at", "@", "sign"}));
  CHECK(tokenize_13a("(bracketed) [stuff] {braces} a/b a'b it's") ==
        toks({"(", "bracketed", ")", "[", "stuff", "]", "{", "braces", "}", "a", "/", "b", "a'b",
              "it's"}));
  CHECK(tokenize_13a("quote\"inside and_underscore") ==
        toks({"quote", "\"", "inside", "and", "_", "underscore"}));
  CHECK(tokenize_13a("trailing dot.") == toks({"trailing", "dot", "."}));
  CHECK(tokenize_13a("2.") == toks({"2", "."}));
  CHECK(tokenize_13a(".5 leading") == toks({".", "5", "leading"}));
}

TEST_CASE("13a unescapes entities and normalizes whitespace") {
  CHECK(tokenize_13a("x&amp;y &lt;tag&gt; &quot;q&quot;") ==
        toks({"x", "&", "y", "<", "tag", ">", "\"", "q", "\""}));
  CHECK(tokenize_13a("multi   space\ttab") == toks({"multi", "space", "tab"}));
  CHECK(tokenize_13a("a<skipped>b") == toks({"ab"}));
  CHECK(tokenize_13a("").empty());
  CHECK(tokenize_13a("   ").empty());
}

TEST_CASE("13a leaves non-ASCII punctuation and letters intact") {
  CHECK(tokenize_13a("Tři skotští studenti byli zařazeni mezi nejlepší v Evropě") ==
        toks({"Tři", "skotští", "studenti", "byli", "zařazeni", "mezi", "nejlepší", "v",
              "Evropě"}));
  CHECK(tokenize_13a("Ekonomika «rostla» o 3,5 %") ==
        toks({"Ekonomika", "«rostla»", "o", "3,5", "%"}));
}

TEST_CASE("tercom tokenization lowercases and splits on whitespace only") {
  CHECK(tokenize_tercom("Hello, World!") == toks({"hello,", "world!"}));
  CHECK(tokenize_tercom("Tři SKOTŠTÍ Studenti") == toks({"tři", "skotští", "studenti"}));
  CHECK(tokenize_tercom("ŘEKA Teče") == toks({"řeka", "teče"}));
  CHECK(tokenize_tercom("  spaced\tout  ") == toks({"spaced", "out"}));
  CHECK(tokenize_tercom("").empty());
}

TEST_CASE("chrf preprocessing removes every whitespace codepoint") {
  auto cps = chrf_codepoints("a b\tc");
  CHECK(cps == std::vector<uint32_t>{'a', 'b', 'c'});
  // U+00A0 no-break space counts as whitespace
  CHECK(chrf_codepoints("a\xc2\xa0z") == std::vector<uint32_t>{'a', 'z'});
  // Czech letters decode as single codepoints
  auto czech = chrf_codepoints("řž");
  REQUIRE(czech.size() == 2);
  CHECK(czech[0] == 0x159);
  CHECK(czech[1] == 0x17E);
}

TEST_CASE("utf8 lowercase covers Latin extensions") {
  CHECK(refeval::utf8::lowercase("ČĎĚŇŘŠŤŮŽÁÉÍÓÚÝ") == "čděňřšťůžáéíóúý");
  CHECK(refeval::utf8::lowercase("ABC xyz 123") == "abc xyz 123");
  CHECK(refeval::utf8::lowercase("Ÿ") == "ÿ");
}
