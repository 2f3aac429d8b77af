#include <doctest.h>

#include <cmath>
#include <set>

#include "refeval/error.hpp"
#include "refeval/metaeval.hpp"
#include "refeval/rng.hpp"
#include "../support/fixture.hpp"

using namespace refeval;

namespace {

// Standalone corpus with chosen DA scores on one segment.
Corpus scores_corpus(const std::vector<double>& das) {
  Corpus corpus;
  corpus.documents = {"d0"};
  Segment seg;
  seg.id = "s0";
  seg.doc_id = "d0";
  seg.source = "src";
  seg.references.push_back(Reference{RefKey{"R1", "", ""}, "ref"});
  for (size_t i = 0; i < das.size(); ++i) {
    std::string sys = "sys" + std::to_string(i);
    corpus.systems.push_back(sys);
    seg.hypotheses[sys] = "hyp";
    corpus.human_scores[{sys, "s0"}] = das[i];
  }
  corpus.segments.push_back(std::move(seg));
  corpus.validate();
  return corpus;
}

}  // namespace

TEST_CASE("daRR pair construction follows the 25-point rule") {
  // 30-point gap produces a pair oriented toward the higher score
  auto pairs = build_darr_pairs(scores_corpus({70, 40}));
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].better == "sys0");
  CHECK(pairs[0].worse == "sys1");

  // 10-point gap produces nothing
  CHECK(build_darr_pairs(scores_corpus({60, 50})).empty());

  // exactly 25 is not "more than 25"
  CHECK(build_darr_pairs(scores_corpus({75, 50})).empty());

  // three systems with 90/50/10: all three gaps exceed 25
  CHECK(build_darr_pairs(scores_corpus({90, 50, 10})).size() == 3);
}

TEST_CASE("daRR is monotone in the threshold") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> das;
    size_t n = 2 + rng.below(5);
    for (size_t i = 0; i < n; ++i) das.push_back(100.0 * rng.next_double());
    Corpus corpus = scores_corpus(das);
    double t1 = 50.0 * rng.next_double();
    double t2 = t1 + 50.0 * rng.next_double();
    auto lo = build_darr_pairs(corpus, t1);
    auto hi = build_darr_pairs(corpus, t2);
    std::set<std::tuple<std::string, std::string, std::string>> lo_set;
    for (const auto& p : lo) lo_set.insert({p.segment, p.better, p.worse});
    for (const auto& p : hi) {
      CHECK(lo_set.count({p.segment, p.better, p.worse}) == 1);
    }
  }
}

TEST_CASE("missing DA score is named") {
  Corpus corpus = scores_corpus({70, 40});
  corpus.human_scores.erase({"sys1", "s0"});
  CHECK_THROWS_WITH_AS(static_cast<void>(build_darr_pairs(corpus)), doctest::Contains("sys1"),
                       DataError);
}

TEST_CASE("kendall tau basic values") {
  std::vector<DarrPair> pairs = {
      {"s0", "a", "b"}, {"s1", "a", "b"}, {"s2", "a", "b"}, {"s3", "a", "b"}};
  SystemSegmentValues values;
  // all concordant
  for (const auto& p : pairs) {
    values[{p.better, p.segment}] = 1.0;
    values[{p.worse, p.segment}] = 0.0;
  }
  auto r = kendall_tau(pairs, values, Orientation::HigherBetter);
  CHECK(r.tau == doctest::Approx(1.0));
  CHECK(r.concordant == 4);

  // 3 concordant, 1 discordant -> (3 - 1) / 4
  values[{"a", "s3"}] = 0.0;
  values[{"b", "s3"}] = 1.0;
  r = kendall_tau(pairs, values, Orientation::HigherBetter);
  CHECK(r.tau == doctest::Approx(0.5));
  CHECK(r.pairs == 4);
  CHECK(r.concordant == 3);
  CHECK(r.discordant == 1);
  CHECK(r.ties == 0);
}

TEST_CASE("kendall tau tie policies") {
  std::vector<DarrPair> pairs = {{"s0", "a", "b"}, {"s1", "a", "b"}};
  SystemSegmentValues values;
  values[{"a", "s0"}] = 1.0;
  values[{"b", "s0"}] = 0.0;  // concordant
  values[{"a", "s1"}] = 0.5;
  values[{"b", "s1"}] = 0.5;  // tie

  CHECK(kendall_tau(pairs, values, Orientation::HigherBetter, TiePolicy::Discordant).tau ==
        doctest::Approx(0.0));
  CHECK(kendall_tau(pairs, values, Orientation::HigherBetter, TiePolicy::Exclude).tau ==
        doctest::Approx(1.0));
  CHECK(kendall_tau(pairs, values, Orientation::HigherBetter, TiePolicy::HalfCredit).tau ==
        doctest::Approx(0.5));

  auto r = kendall_tau(pairs, values, Orientation::HigherBetter);
  CHECK(r.concordant + r.discordant + r.ties == r.pairs);
}

TEST_CASE("kendall tau rejects an empty pair list") {
  SystemSegmentValues values;
  CHECK_THROWS_AS(static_cast<void>(kendall_tau({}, values, Orientation::HigherBetter)),
                  DataError);
}

TEST_CASE("kendall tau matches a naive recount on random instances") {
  Rng rng(22);
  for (int trial = 0; trial < 120; ++trial) {
    size_t n_sys = 2 + rng.below(4);   // up to 5 systems
    size_t n_seg = 1 + rng.below(5);   // up to 5 segments
    Corpus corpus;
    corpus.documents = {"d0"};
    for (size_t s = 0; s < n_sys; ++s) corpus.systems.push_back("sys" + std::to_string(s));
    SystemSegmentValues values;
    for (size_t g = 0; g < n_seg; ++g) {
      Segment seg;
      seg.id = "s" + std::to_string(g);
      seg.doc_id = "d0";
      seg.source = "x";
      seg.references.push_back(Reference{RefKey{"R1", "", ""}, "r"});
      for (const auto& sys : corpus.systems) {
        seg.hypotheses[sys] = "h";
        // quantized so DA ties and metric ties both occur
        corpus.human_scores[{sys, seg.id}] = 10.0 * static_cast<double>(rng.below(11));
        values[{sys, seg.id}] = static_cast<double>(rng.below(5));
      }
      corpus.segments.push_back(std::move(seg));
    }
    std::sort(corpus.segments.begin(), corpus.segments.end(),
              [](const Segment& a, const Segment& b) { return a.id < b.id; });

    auto pairs = build_darr_pairs(corpus);
    if (pairs.empty()) continue;

    // naive double loop, counted independently
    size_t conc = 0, disc = 0, tie = 0;
    for (const auto& seg : corpus.segments) {
      for (size_t i = 0; i < n_sys; ++i) {
        for (size_t j = i + 1; j < n_sys; ++j) {
          double da_i = corpus.human_scores.at({corpus.systems[i], seg.id});
          double da_j = corpus.human_scores.at({corpus.systems[j], seg.id});
          if (std::abs(da_i - da_j) <= 25.0) continue;
          const auto& better = da_i > da_j ? corpus.systems[i] : corpus.systems[j];
          const auto& worse = da_i > da_j ? corpus.systems[j] : corpus.systems[i];
          double vb = values.at({better, seg.id});
          double vw = values.at({worse, seg.id});
          if (vb > vw) {
            ++conc;
          } else if (vb < vw) {
            ++disc;
          } else {
            ++tie;
          }
        }
      }
    }
    double naive_tau =
        (static_cast<double>(conc) - static_cast<double>(disc + tie)) / pairs.size();

    auto r = kendall_tau(pairs, values, Orientation::HigherBetter);
    CHECK(r.concordant == conc);
    CHECK(r.discordant == disc);
    CHECK(r.ties == tie);
    CHECK(r.tau == naive_tau);  // exact equality
  }
}

TEST_CASE("orientation flip negates tau on tie-free instances") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DarrPair> pairs;
    SystemSegmentValues values;
    size_t n = 2 + rng.below(10);
    for (size_t i = 0; i < n; ++i) {
      std::string seg = "s" + std::to_string(i);
      pairs.push_back({seg, "a", "b"});
      double va = rng.next_double();
      double vb = rng.next_double();
      if (va == vb) va += 0.5;
      values[{"a", seg}] = va;
      values[{"b", seg}] = vb;
    }
    auto up = kendall_tau(pairs, values, Orientation::HigherBetter);
    auto down = kendall_tau(pairs, values, Orientation::LowerBetter);
    CHECK(up.tau == doctest::Approx(-down.tau));
  }
}

TEST_CASE("aggregate: average, orientation-aware max, single") {
  ScoreTable higher(MetricId{"M", Orientation::HigherBetter});
  higher.add({"sysA", "s0", "R1", 60.0});
  higher.add({"sysA", "s0", "R2", 80.0});
  higher.finalize();
  CHECK(aggregate(higher, Aggregation::Max).at({"sysA", "s0"}) == 80.0);
  CHECK(aggregate(higher, Aggregation::Average).at({"sysA", "s0"}) == doctest::Approx(70.0));
  CHECK_THROWS_AS(static_cast<void>(aggregate(higher, Aggregation::Single)), UsageError);

  ScoreTable ter(MetricId{"TER", Orientation::LowerBetter});
  ter.add({"sysA", "s0", "R1", 20.0});
  ter.add({"sysA", "s0", "R2", 40.0});
  ter.finalize();
  // orientation-aware best of a lower-better metric is the minimum
  CHECK(aggregate(ter, Aggregation::Max).at({"sysA", "s0"}) == 20.0);

  ScoreTable single(MetricId{"M", Orientation::HigherBetter});
  single.add({"sysA", "s0", "R1", 42.0});
  single.finalize();
  CHECK(aggregate(single, Aggregation::Single).at({"sysA", "s0"}) == 42.0);
  CHECK(aggregate(single, Aggregation::Average).at({"sysA", "s0"}) == 42.0);
  CHECK(aggregate(single, Aggregation::Max).at({"sysA", "s0"}) == 42.0);
}

TEST_CASE("aggregate dominance properties on random tables") {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    bool lower = rng.next_double() < 0.5;
    ScoreTable table(MetricId{"M", lower ? Orientation::LowerBetter : Orientation::HigherBetter});
    size_t refs = 1 + rng.below(6);
    std::vector<double> vals;
    for (size_t r = 0; r < refs; ++r) {
      double v = 100.0 * rng.next_double();
      vals.push_back(v);
      table.add({"sys", "seg", "R" + std::to_string(r + 1), v});
    }
    table.finalize();
    double mn = *std::min_element(vals.begin(), vals.end());
    double mx = *std::max_element(vals.begin(), vals.end());
    double avg = aggregate(table, Aggregation::Average).at({"sys", "seg"});
    double best = aggregate(table, Aggregation::Max).at({"sys", "seg"});
    CHECK(avg >= mn - 1e-12);
    CHECK(avg <= mx + 1e-12);
    CHECK(best == (lower ? mn : mx));
  }
}

TEST_CASE("correlate on the fixture behaves like its parts") {
  Corpus corpus = testing::make_fixture_corpus();
  auto single = correlate(corpus, metric_chrf(), "R3", Aggregation::Single);
  CHECK(single.tau >= -1.0);
  CHECK(single.tau <= 1.0);
  CHECK(single.pairs == single.concordant + single.discordant + single.ties);

  // singleton set: every aggregation gives the same result
  auto avg = correlate(corpus, metric_chrf(), "R3", Aggregation::Average);
  auto mx = correlate(corpus, metric_chrf(), "R3", Aggregation::Max);
  CHECK(single.tau == avg.tau);
  CHECK(single.tau == mx.tau);

  // the synthetic corpus is built so metrics track the DA scores
  CHECK(single.tau > 0.0);
}

TEST_CASE("t interval golden values") {
  // published two-sided 99% t table: df=9 -> 3.2498, df=4 -> 4.6041
  std::vector<double> ten(10, 0.0);
  for (size_t i = 0; i < ten.size(); ++i) ten[i] = static_cast<double>(i);
  double mean = 4.5;
  double ss = 0.0;
  for (double v : ten) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / 9.0);
  CHECK(t_ci99_halfwidth(ten) == doctest::Approx(3.24984 * sd / std::sqrt(10.0)).epsilon(1e-4));

  std::vector<double> five = {1, 2, 3, 4, 5};
  CHECK(t_ci99_halfwidth(five) ==
        doctest::Approx(4.60409 * std::sqrt(2.5) / std::sqrt(5.0)).epsilon(1e-4));

  CHECK(std::isinf(t_ci99_halfwidth({1.0})));
  CHECK(t_ci99_halfwidth({2.0, 2.0, 2.0}) == 0.0);
}
