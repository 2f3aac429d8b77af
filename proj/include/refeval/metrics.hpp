#ifndef REFEVAL_METRICS_HPP
#define REFEVAL_METRICS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "refeval/corpus.hpp"

namespace refeval {

enum class Orientation { HigherBetter, LowerBetter };

std::string_view to_string(Orientation o);
Orientation orientation_from_string(std::string_view s);

struct MetricId {
  std::string name;
  Orientation orientation = Orientation::HigherBetter;

  bool operator==(const MetricId&) const = default;
};

// Native string metrics. TER is the only lower-better one.
MetricId metric_bleu();
MetricId metric_chrf();
MetricId metric_ter();
bool is_native_metric(std::string_view name);
MetricId native_metric(std::string_view name);  // throws UsageError on unknown name

// Sentence scoring -------------------------------------------------------

// `degenerate` flags the empty-input convention (score forced, not computed)
// so corpus sweeps can carry the warning instead of aborting.
struct SentenceScore {
  double value = 0.0;
  bool degenerate = false;
};

// Sentence BLEU, 13a tokenization, mixed case, effective order, exponential
// smoothing, max order 4. Empty-after-tokenization input scores 0 with the
// degenerate flag set. Range [0, 100].
SentenceScore bleu_sentence(std::string_view hypothesis, std::string_view reference);

// Sentence chrF, character n-grams up to order 6, beta = 2, no word n-grams,
// mixed case, effective order, no smoothing. Range [0, 100].
SentenceScore chrf_sentence(std::string_view hypothesis, std::string_view reference);

struct TerOptions {
  bool shifts = true;        // disable to get plain edit distance (tests)
  int max_shift_size = 10;   // longest block that may move
  int max_shift_distance = 50;
  int max_shift_candidates = 1000;
};

// Edit count (insertions + deletions + substitutions + block shifts) under
// the tercom greedy shift search, on already-tokenized input.
int ter_edit_count(const std::vector<std::string>& hypothesis,
                   const std::vector<std::string>& reference,
                   const TerOptions& options = {});

// Sentence TER in percent: 100 * edits / reference length. Lowercased,
// whitespace tokenization. Throws DataError when the reference tokenizes to
// nothing (undefined denominator).
double ter_sentence(std::string_view hypothesis, std::string_view reference);

// Score tables -----------------------------------------------------------

struct ScoreEntry {
  std::string system;
  std::string segment;
  std::string ref_key;  // RefKey::str(), or "none" for referenceless metrics
  double value = 0.0;

  bool operator==(const ScoreEntry&) const = default;
};

struct ScoreWarning {
  std::string system;
  std::string segment;
  std::string ref_key;
  std::string message;
};

// Scores of one metric over (system, segment, reference) cells, kept in
// canonical (system, segment, ref_key) order.
class ScoreTable {
 public:
  explicit ScoreTable(MetricId metric, bool external = false)
      : metric_(std::move(metric)), external_(external) {}

  const MetricId& metric() const { return metric_; }
  bool external() const { return external_; }

  void add(ScoreEntry entry) { entries_.push_back(std::move(entry)); }
  void warn(ScoreWarning w) { warnings_.push_back(std::move(w)); }

  // Sorts canonically and rejects duplicate keys.
  void finalize();

  const std::vector<ScoreEntry>& entries() const { return entries_; }
  const std::vector<ScoreWarning>& warnings() const { return warnings_; }

  const ScoreEntry* find(const std::string& system, const std::string& segment,
                         const std::string& ref_key) const;
  double at(const std::string& system, const std::string& segment,
            const std::string& ref_key) const;

  void export_tsv(const std::filesystem::path& path) const;

 private:
  MetricId metric_;
  bool external_;
  std::vector<ScoreEntry> entries_;
  std::vector<ScoreWarning> warnings_;
};

// One score per (system, segment, reference in list). Pure in all arguments;
// cells may be evaluated in parallel, the result order is canonical either
// way.
ScoreTable score_all(const Corpus& corpus, const MetricId& metric,
                     const SelectedRefs& references, int threads = 1);

// Externally computed scores (COMET, BLEURT, ...) from a TSV with columns
// system_id, seg_id, ref_key, value. Keys are validated against the corpus;
// duplicates, unknown keys and NaN values are data errors.
ScoreTable ingest_scores(const Corpus& corpus, const std::filesystem::path& path,
                         const std::string& metric_name, Orientation orientation);

// Variant reading name/orientation from the JSON sidecar `<path>.json`
// ({"name": ..., "orientation": "higher"|"lower"}).
ScoreTable ingest_scores(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace refeval

#endif  // REFEVAL_METRICS_HPP
