#include <doctest.h>

#include <set>

#include "refeval/corpus.hpp"
#include "refeval/error.hpp"
#include "../support/fixture.hpp"

using namespace refeval;

namespace {
Corpus fixture() { return testing::make_fixture_corpus(); }
}  // namespace

TEST_CASE("single level selector resolves to exactly one reference per segment") {
  Corpus corpus = fixture();
  auto refs = select_references(corpus, "R3");
  CHECK(refs.size() == corpus.segments.size());
  for (const auto& [seg, keys] : refs) {
    REQUIRE(keys.size() == 1);
    CHECK(keys[0].level == "R3");
    CHECK_FALSE(keys[0].is_post_edit());
  }
}

TEST_CASE("Rx selects one original per level") {
  Corpus corpus = fixture();
  auto refs = select_references(corpus, "Rx");
  for (const auto& [seg, keys] : refs) {
    CHECK(keys.size() == 4);
    for (const auto& k : keys) CHECK_FALSE(k.is_post_edit());
  }
}

TEST_CASE("brace subsets equal the union of their parts") {
  Corpus corpus = fixture();
  auto braced = select_references(corpus, "R{3,4}");
  auto left = select_references(corpus, "R3");
  auto right = select_references(corpus, "R4");
  for (const auto& [seg, keys] : braced) {
    std::set<RefKey> expect(left.at(seg).begin(), left.at(seg).end());
    expect.insert(right.at(seg).begin(), right.at(seg).end());
    CHECK(std::set<RefKey>(keys.begin(), keys.end()) == expect);
  }
}

TEST_CASE("post-edit selectors") {
  Corpus corpus = fixture();
  // fixture editors: 2 laymen, 1 student, 1 professional per level
  auto pe = select_references(corpus, "R1^PE");
  for (const auto& [seg, keys] : pe) {
    CHECK(keys.size() == 4);
    for (const auto& k : keys) {
      CHECK(k.level == "R1");
      CHECK(k.is_post_edit());
    }
  }

  auto laymen = select_references(corpus, "R1^PE(layman)");
  for (const auto& [seg, keys] : laymen) {
    CHECK(keys.size() == 2);
    for (const auto& k : keys) CHECK(k.proficiency == "layman");
  }

  auto one = select_references(corpus, "R2+student:a03");
  for (const auto& [seg, keys] : one) {
    REQUIRE(keys.size() == 1);
    CHECK(keys[0] == RefKey{"R2", "student", "a03"});
  }
}

TEST_CASE("combined pools") {
  Corpus corpus = fixture();
  auto pool = select_references(corpus, "R{x,x^PE}");
  // 4 originals + 4 levels x 4 editors
  for (const auto& [seg, keys] : pool) CHECK(keys.size() == 20);

  auto mixed = select_references(corpus, "R{1,1^PE}");
  for (const auto& [seg, keys] : mixed) CHECK(keys.size() == 5);

  auto all_pe = select_references(corpus, "Rx^PE");
  for (const auto& [seg, keys] : all_pe) CHECK(keys.size() == 16);
}

TEST_CASE("selection is deterministic and canonically ordered") {
  Corpus corpus = fixture();
  auto a = select_references(corpus, "R{x,x^PE}");
  auto b = select_references(corpus, "R{x,x^PE}");
  CHECK(a == b);
  for (const auto& [seg, keys] : a) {
    CHECK(std::is_sorted(keys.begin(), keys.end()));
  }
}

TEST_CASE("empty selection names the segment") {
  Corpus corpus = fixture();
  CHECK_THROWS_WITH_AS(static_cast<void>(select_references(corpus, "R9")),
                       doctest::Contains("seg000"), DataError);
  CHECK_THROWS_WITH_AS(static_cast<void>(select_references(corpus, "R1^PE(expert)")),
                       doctest::Contains("selects no references"), DataError);
}

TEST_CASE("selector syntax errors") {
  Corpus corpus = fixture();
  CHECK_THROWS_AS(static_cast<void>(select_references(corpus, "")), UsageError);
  CHECK_THROWS_AS(static_cast<void>(select_references(corpus, "X3")), UsageError);
  CHECK_THROWS_AS(static_cast<void>(select_references(corpus, "R{3,4")), UsageError);
  CHECK_THROWS_AS(static_cast<void>(select_references(corpus, "R3^PE(")), UsageError);
  CHECK_THROWS_AS(static_cast<void>(select_references(corpus, "R3+layman")), UsageError);
  CHECK_THROWS_AS(static_cast<void>(select_references(corpus, "R{1^PE}^PE")), UsageError);
}
