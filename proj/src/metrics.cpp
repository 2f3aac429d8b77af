#include "refeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "refeval/error.hpp"
#include "refeval/parallel.hpp"
#include "refeval/tokenize.hpp"
#include "refeval/tsv.hpp"

namespace refeval {

std::string_view to_string(Orientation o) {
  return o == Orientation::HigherBetter ? "higher" : "lower";
}

Orientation orientation_from_string(std::string_view s) {
  if (s == "higher" || s == "higher-better") return Orientation::HigherBetter;
  if (s == "lower" || s == "lower-better") return Orientation::LowerBetter;
  throw UsageError("unknown orientation '" + std::string(s) + "' (expected higher or lower)");
}

MetricId metric_bleu() { return {"BLEU", Orientation::HigherBetter}; }
MetricId metric_chrf() { return {"chrF", Orientation::HigherBetter}; }
MetricId metric_ter() { return {"TER", Orientation::LowerBetter}; }

bool is_native_metric(std::string_view name) {
  return name == "BLEU" || name == "chrF" || name == "TER";
}

MetricId native_metric(std::string_view name) {
  if (name == "BLEU") return metric_bleu();
  if (name == "chrF") return metric_chrf();
  if (name == "TER") return metric_ter();
  throw UsageError("unknown native metric '" + std::string(name) +
                   "' (expected BLEU, chrF or TER)");
}

// ScoreTable ----------------------------------------------------------------

namespace {

bool entry_key_less(const ScoreEntry& a, const ScoreEntry& b) {
  return std::tie(a.system, a.segment, a.ref_key) < std::tie(b.system, b.segment, b.ref_key);
}

}  // namespace

void ScoreTable::finalize() {
  std::sort(entries_.begin(), entries_.end(), entry_key_less);
  for (size_t i = 1; i < entries_.size(); ++i) {
    const auto& a = entries_[i - 1];
    const auto& b = entries_[i];
    if (a.system == b.system && a.segment == b.segment && a.ref_key == b.ref_key) {
      throw DataError("duplicate score for (" + a.system + ", " + a.segment + ", " + a.ref_key +
                      ")");
    }
  }
}

const ScoreEntry* ScoreTable::find(const std::string& system, const std::string& segment,
                                   const std::string& ref_key) const {
  ScoreEntry probe{system, segment, ref_key, 0.0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), probe, entry_key_less);
  if (it != entries_.end() && it->system == system && it->segment == segment &&
      it->ref_key == ref_key) {
    return &*it;
  }
  return nullptr;
}

double ScoreTable::at(const std::string& system, const std::string& segment,
                      const std::string& ref_key) const {
  const ScoreEntry* e = find(system, segment, ref_key);
  if (!e) {
    throw DataError("missing score for (" + system + ", " + segment + ", " + ref_key + ")");
  }
  return e->value;
}

void ScoreTable::export_tsv(const std::filesystem::path& path) const {
  tsv::Writer w(path, {"metric", "system_id", "seg_id", "ref_key", "value"});
  for (const auto& e : entries_) {
    w.row({metric_.name, e.system, e.segment, e.ref_key, tsv::format_double(e.value)});
  }
}

// score_all -------------------------------------------------------------------

ScoreTable score_all(const Corpus& corpus, const MetricId& metric, const SelectedRefs& references,
                     int threads) {
  if (!is_native_metric(metric.name)) {
    throw UsageError("score_all needs a native metric, got '" + metric.name + "'");
  }

  struct Cell {
    const std::string* system;
    const Segment* segment;
    const Reference* reference;
  };
  std::vector<Cell> cells;
  for (const auto& seg : corpus.segments) {
    auto sel = references.find(seg.id);
    if (sel == references.end() || sel->second.empty()) {
      throw DataError("no references selected for segment '" + seg.id + "'");
    }
    for (const auto& key : sel->second) {
      const Reference* ref = seg.find_reference(key);
      if (!ref) {
        throw DataError("segment '" + seg.id + "' has no reference '" + key.str() + "'");
      }
      for (const auto& system : corpus.systems) {
        cells.push_back({&system, &seg, ref});
      }
    }
  }

  struct CellResult {
    double value = 0.0;
    bool degenerate = false;
  };
  std::vector<CellResult> results(cells.size());

  parallel_for(cells.size(), threads, [&](size_t i) {
    const Cell& cell = cells[i];
    const std::string& hyp = cell.segment->hypotheses.at(*cell.system);
    const std::string& ref = cell.reference->text;
    if (metric.name == "BLEU") {
      auto s = bleu_sentence(hyp, ref);
      results[i] = {s.value, s.degenerate};
    } else if (metric.name == "chrF") {
      auto s = chrf_sentence(hyp, ref);
      results[i] = {s.value, s.degenerate};
    } else {
      // TER: an empty reference would normally be an error; in a sweep it is
      // recorded as a worst-typical score with a warning instead.
      auto rtoks = tokenize_tercom(ref);
      if (rtoks.empty()) {
        results[i] = {100.0, true};
      } else {
        results[i] = {100.0 * ter_edit_count(tokenize_tercom(hyp), rtoks) / rtoks.size(), false};
      }
    }
  });

  ScoreTable table(metric);
  for (size_t i = 0; i < cells.size(); ++i) {
    const Cell& cell = cells[i];
    table.add({*cell.system, cell.segment->id, cell.reference->key.str(), results[i].value});
    if (results[i].degenerate) {
      table.warn({*cell.system, cell.segment->id, cell.reference->key.str(),
                  "empty input, score forced"});
    }
  }
  table.finalize();
  return table;
}

// ingest ----------------------------------------------------------------------

ScoreTable ingest_scores(const Corpus& corpus, const std::filesystem::path& path,
                         const std::string& metric_name, Orientation orientation) {
  auto rows = tsv::read_file(path, {"system_id", "seg_id", "ref_key", "value"});
  if (rows.empty()) throw DataError(path.string() + ": no scores");

  ScoreTable table(MetricId{metric_name, orientation}, /*external=*/true);
  for (const auto& row : rows) {
    const std::string& system = row.fields[0];
    const std::string& segment = row.fields[1];
    const std::string& ref_key = row.fields[2];
    if (std::find(corpus.systems.begin(), corpus.systems.end(), system) == corpus.systems.end()) {
      throw DataError(row.locus() + ": unknown system '" + system + "'");
    }
    const Segment* seg = corpus.find_segment(segment);
    if (!seg) throw DataError(row.locus() + ": unknown segment '" + segment + "'");
    if (ref_key != "none" && !seg->find_reference(RefKey::parse(ref_key))) {
      throw DataError(row.locus() + ": unknown reference key '" + ref_key + "' for segment '" +
                      segment + "'");
    }
    double value = 0.0;
    try {
      size_t pos = 0;
      value = std::stod(row.fields[3], &pos);
      if (pos != row.fields[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw DataError(row.locus() + ": bad value '" + row.fields[3] + "'");
    }
    if (std::isnan(value)) throw DataError(row.locus() + ": NaN value");
    table.add({system, segment, ref_key, value});
  }
  table.finalize();  // rejects duplicates
  return table;
}

ScoreTable ingest_scores(const Corpus& corpus, const std::filesystem::path& path) {
  std::filesystem::path sidecar = path;
  sidecar += ".json";
  std::ifstream in(sidecar);
  if (!in) throw DataError("missing sidecar " + sidecar.string());
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(sidecar.string() + ": " + e.what());
  }
  return ingest_scores(corpus, path, meta.at("name").get<std::string>(),
                       orientation_from_string(meta.at("orientation").get<std::string>()));
}

}  // namespace refeval
