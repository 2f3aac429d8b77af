#include <doctest.h>

#include <cmath>

#include "refeval/error.hpp"
#include "refeval/metaeval.hpp"
#include "../support/fixture.hpp"

using namespace refeval;

TEST_CASE("mix endpoints reduce to plain single-reference correlation") {
  Corpus corpus = testing::make_fixture_corpus();
  auto base_a = correlate(corpus, metric_chrf(), "R1", Aggregation::Single);
  auto base_b = correlate(corpus, metric_chrf(), "R3", Aggregation::Single);

  auto zero = mix_references(corpus, metric_chrf(), "R1", "R3", 0.0, 99);
  auto one = mix_references(corpus, metric_chrf(), "R1", "R3", 1.0, 99);
  CHECK(zero.tau == base_a.tau);
  CHECK(one.tau == base_b.tau);
}

TEST_CASE("mix is deterministic per seed and validates the fraction") {
  Corpus corpus = testing::make_fixture_corpus();
  auto a = mix_references(corpus, metric_bleu(), "R1", "R3", 0.5, 7);
  auto b = mix_references(corpus, metric_bleu(), "R1", "R3", 0.5, 7);
  CHECK(a.tau == b.tau);
  CHECK_THROWS_AS(static_cast<void>(mix_references(corpus, metric_bleu(), "R1", "R3", 1.5, 7)),
                  UsageError);
  CHECK_THROWS_AS(static_cast<void>(mix_references(corpus, metric_bleu(), "R1", "R3", -0.1, 7)),
                  UsageError);
}

TEST_CASE("mix fraction rounds up to whole segments") {
  Corpus corpus = testing::make_fixture_corpus();
  // fraction so small that ceil() still forces one segment onto level B
  auto tiny = mix_references(corpus, metric_chrf(), "R1", "R3", 1e-6, 3);
  auto zero = mix_references(corpus, metric_chrf(), "R1", "R3", 0.0, 3);
  // can only differ through that one segment; both must stay valid taus
  CHECK(std::abs(tiny.tau - zero.tau) <= 2.0);
}

TEST_CASE("sampling curve: full-pool point is deterministic with zero variance") {
  Corpus corpus = testing::make_fixture_corpus();
  // pool of 4 originals; x = pool size samples everything
  auto points = sampling_curve(corpus, metric_chrf(), "Rx", 4, 4, 5, 123);
  REQUIRE(points.size() == 1);
  CHECK(points[0].ci99_halfwidth == 0.0);
  auto full = correlate(corpus, metric_chrf(), "Rx", Aggregation::Average);
  CHECK(points[0].mean_tau == doctest::Approx(full.tau));
}

TEST_CASE("sampling curve: one repetition reports an infinite interval") {
  Corpus corpus = testing::make_fixture_corpus();
  auto points = sampling_curve(corpus, metric_chrf(), "Rx", 1, 2, 1, 5);
  REQUIRE(points.size() == 2);
  CHECK(std::isinf(points[0].ci99_halfwidth));
  CHECK(points[0].n == 1);
}

TEST_CASE("sampling curve is byte-reproducible for a fixed seed") {
  Corpus corpus = testing::make_fixture_corpus();
  auto a = sampling_curve(corpus, metric_bleu(), "R{x,x^PE}", 1, 5, 4, 77);
  auto b = sampling_curve(corpus, metric_bleu(), "R{x,x^PE}", 1, 5, 4, 77);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].mean_tau == b[i].mean_tau);
    CHECK(a[i].ci99_halfwidth == b[i].ci99_halfwidth);
  }
}

TEST_CASE("sampling curve rejects x beyond the pool") {
  Corpus corpus = testing::make_fixture_corpus();
  CHECK_THROWS_AS(static_cast<void>(sampling_curve(corpus, metric_chrf(), "Rx", 1, 5, 3, 1)),
                  UsageError);
  CHECK_THROWS_AS(static_cast<void>(sampling_curve(corpus, metric_chrf(), "Rx", 0, 2, 3, 1)),
                  UsageError);
}

TEST_CASE("raw score report means and the flipped variant") {
  Corpus corpus = testing::make_fixture_corpus();
  auto report = raw_score_report(corpus, {metric_bleu(), metric_ter()}, {"R1", "R3"},
                                 /*flip_lower_better=*/true);
  REQUIRE(report.means.size() == 2);
  REQUIRE(report.means[0].size() == 2);
  // flipped TER means are negative for imperfect hypotheses
  CHECK(report.means[1][0] < 0.0);

  auto raw = raw_score_report(corpus, {metric_ter()}, {"R1"}, /*flip_lower_better=*/false);
  CHECK(raw.means[0][0] == doctest::Approx(-report.means[1][0]));
}

TEST_CASE("identical hypothesis and reference sets give identity means") {
  Corpus corpus = testing::make_tiny_corpus();
  // every system copies the R1 reference
  for (auto& seg : corpus.segments) {
    for (auto& [sys, hyp] : seg.hypotheses) hyp = seg.references[0].text;
  }
  auto report = raw_score_report(corpus, {metric_bleu(), metric_chrf(), metric_ter()}, {"R1"},
                                 /*flip_lower_better=*/false);
  CHECK(report.means[0][0] == doctest::Approx(100.0));
  CHECK(report.means[1][0] == doctest::Approx(100.0));
  CHECK(report.means[2][0] == doctest::Approx(0.0));
}
