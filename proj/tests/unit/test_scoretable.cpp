#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "refeval/error.hpp"
#include "refeval/metrics.hpp"
#include "../support/fixture.hpp"

using namespace refeval;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("refeval_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("score_all produces one score per (system, segment, reference)") {
  Corpus corpus = testing::make_fixture_corpus();
  auto refs = select_references(corpus, "R{1,2}");
  ScoreTable table = score_all(corpus, metric_chrf(), refs);
  CHECK(table.entries().size() == corpus.systems.size() * corpus.segments.size() * 2);

  auto single = select_references(corpus, "R3");
  ScoreTable t2 = score_all(corpus, metric_bleu(), single);
  CHECK(t2.entries().size() == corpus.systems.size() * corpus.segments.size());
}

TEST_CASE("score_all is pure: repeated and threaded runs are identical") {
  Corpus corpus = testing::make_fixture_corpus();
  auto refs = select_references(corpus, "Rx");
  ScoreTable a = score_all(corpus, metric_ter(), refs, 1);
  ScoreTable b = score_all(corpus, metric_ter(), refs, 1);
  ScoreTable c = score_all(corpus, metric_ter(), refs, 4);
  CHECK(a.entries() == b.entries());
  CHECK(a.entries() == c.entries());

  auto dir = fresh_dir("scoretable_det");
  a.export_tsv(dir / "a.tsv");
  c.export_tsv(dir / "c.tsv");
  CHECK(slurp(dir / "a.tsv") == slurp(dir / "c.tsv"));
}

TEST_CASE("score_all carries warnings instead of aborting") {
  Corpus corpus = testing::make_tiny_corpus();
  // inject an empty reference text
  corpus.segments[0].references[0].text = "";
  auto refs = select_references(corpus, "R1");
  ScoreTable bleu = score_all(corpus, metric_bleu(), refs);
  CHECK_FALSE(bleu.warnings().empty());
  CHECK(bleu.at(corpus.systems[0], corpus.segments[0].id, "R1") == 0.0);

  ScoreTable ter = score_all(corpus, metric_ter(), refs);
  CHECK_FALSE(ter.warnings().empty());
  CHECK(ter.at(corpus.systems[0], corpus.segments[0].id, "R1") == 100.0);
}

TEST_CASE("score table lookups and export are canonical") {
  Corpus corpus = testing::make_tiny_corpus();
  auto refs = select_references(corpus, "R1");
  ScoreTable table = score_all(corpus, metric_chrf(), refs);
  const auto& entries = table.entries();
  for (size_t i = 1; i < entries.size(); ++i) {
    CHECK(std::tie(entries[i - 1].system, entries[i - 1].segment, entries[i - 1].ref_key) <
          std::tie(entries[i].system, entries[i].segment, entries[i].ref_key));
  }
  CHECK(table.find("nope", "s0", "R1") == nullptr);
  CHECK_THROWS_AS(static_cast<void>(table.at("nope", "s0", "R1")), DataError);
}

TEST_CASE("ingest validates keys, duplicates and NaN") {
  Corpus corpus = testing::make_tiny_corpus();
  auto dir = fresh_dir("ingest");
  auto write = [&](const std::string& body) {
    std::ofstream f(dir / "scores.tsv", std::ios::binary);
    f << "system_id\tseg_id\tref_key\tvalue\n" << body;
  };

  const std::string seg0 = corpus.segments[0].id;
  const std::string seg1 = corpus.segments[1].id;

  write("sys0\t" + seg0 + "\tR1\t0.5\nsys0\t" + seg1 + "\tR1\t0.25\n");
  ScoreTable t = ingest_scores(corpus, dir / "scores.tsv", "COMET", Orientation::HigherBetter);
  CHECK(t.external());
  CHECK(t.entries().size() == 2);
  CHECK(t.metric().name == "COMET");

  write("");
  CHECK_THROWS_WITH_AS(
      static_cast<void>(ingest_scores(corpus, dir / "scores.tsv", "M", Orientation::HigherBetter)),
      doctest::Contains("no scores"), DataError);

  write("sysZ\t" + seg0 + "\tR1\t0.5\n");
  CHECK_THROWS_WITH_AS(
      static_cast<void>(ingest_scores(corpus, dir / "scores.tsv", "M", Orientation::HigherBetter)),
      doctest::Contains("unknown system"), DataError);

  write("sys0\t" + seg0 + "\tR1\t0.5\nsys0\t" + seg0 + "\tR1\t0.75\n");
  CHECK_THROWS_WITH_AS(
      static_cast<void>(ingest_scores(corpus, dir / "scores.tsv", "M", Orientation::HigherBetter)),
      doctest::Contains("duplicate"), DataError);

  write("sys0\t" + seg0 + "\tR1\tnan\n");
  CHECK_THROWS_WITH_AS(
      static_cast<void>(ingest_scores(corpus, dir / "scores.tsv", "M", Orientation::HigherBetter)),
      doctest::Contains("NaN"), DataError);

  // QE-style files use the sentinel key "none"
  write("sys0\t" + seg0 + "\tnone\t0.5\nsys0\t" + seg1 + "\tnone\t0.5\n");
  ScoreTable qe = ingest_scores(corpus, dir / "scores.tsv", "QE", Orientation::HigherBetter);
  CHECK(qe.entries().size() == 2);

  // single row is fine
  write("sys0\t" + seg0 + "\tR1\t0.5\n");
  CHECK(ingest_scores(corpus, dir / "scores.tsv", "M", Orientation::HigherBetter).entries().size() ==
        1);
}

TEST_CASE("ingest reads the sidecar when name/orientation are not given") {
  Corpus corpus = testing::make_tiny_corpus();
  auto dir = fresh_dir("ingest_sidecar");
  {
    std::ofstream f(dir / "bleurt.tsv", std::ios::binary);
    f << "system_id\tseg_id\tref_key\tvalue\n";
    for (const auto& sys : corpus.systems) {
      for (const auto& seg : corpus.segments) {
        f << sys << "\t" << seg.id << "\tR1\t0.5\n";
      }
    }
  }
  {
    std::ofstream f(dir / "bleurt.tsv.json");
    f << R"({"name": "BLEURT", "orientation": "higher"})";
  }
  ScoreTable t = ingest_scores(corpus, dir / "bleurt.tsv");
  CHECK(t.metric().name == "BLEURT");
  CHECK(t.metric().orientation == Orientation::HigherBetter);
  fs::remove(dir / "bleurt.tsv.json");
  CHECK_THROWS_WITH_AS(static_cast<void>(ingest_scores(corpus, dir / "bleurt.tsv")),
                       doctest::Contains("sidecar"), DataError);
}
