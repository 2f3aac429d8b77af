#ifndef REFEVAL_METAEVAL_HPP
#define REFEVAL_METAEVAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "refeval/corpus.hpp"
#include "refeval/metrics.hpp"

namespace refeval {

// One golden pairwise comparison derived from human DA scores: on `segment`,
// `better` outscored `worse` by more than the threshold.
struct DarrPair {
  std::string segment;
  std::string better;
  std::string worse;

  bool operator==(const DarrPair&) const = default;
};

// Every unordered system pair whose DA scores differ by more than `threshold`
// (absolute, 0-100 scale) yields one pair, oriented toward the higher score.
// Deterministic order. Missing DA cells are data errors.
std::vector<DarrPair> build_darr_pairs(const Corpus& corpus, double threshold = 25.0);

enum class Aggregation { Single, Average, Max };

std::string_view to_string(Aggregation a);
Aggregation aggregation_from_string(std::string_view s);

// Aggregated metric value per (system, segment).
using SystemSegmentValues = std::map<std::pair<std::string, std::string>, double>;

// Average = arithmetic mean over reference keys; Max = orientation-aware best
// (minimum for lower-better metrics); Single requires exactly one reference
// score per cell.
SystemSegmentValues aggregate(const ScoreTable& table, Aggregation strategy);

// How metric ties inside a golden pair enter tau:
//   Discordant  tie counts against the metric (WMT daRR convention), default
//   Exclude     tie removes the pair from the denominator
//   HalfCredit  tie contributes zero to the numerator, stays in denominator
enum class TiePolicy { Discordant, Exclude, HalfCredit };

std::string_view to_string(TiePolicy p);
TiePolicy tie_policy_from_string(std::string_view s);

struct CorrelationResult {
  MetricId metric;
  std::string selector;  // descriptor of the reference configuration
  Aggregation aggregation = Aggregation::Single;
  double tau = 0.0;
  size_t pairs = 0;
  size_t concordant = 0;  // raw disjoint counts: concordant + discordant + ties = pairs
  size_t discordant = 0;
  size_t ties = 0;
};

// A pair is concordant when the orientation-adjusted value of the better
// system strictly exceeds the worse one's. Empty pair list is an error.
CorrelationResult kendall_tau(const std::vector<DarrPair>& pairs,
                              const SystemSegmentValues& values, Orientation orientation,
                              TiePolicy policy = TiePolicy::Discordant);

// score_all / aggregate / build_darr_pairs / kendall_tau in one call.
CorrelationResult correlate(const Corpus& corpus, const MetricId& metric,
                            const std::string& selector, Aggregation aggregation,
                            TiePolicy policy = TiePolicy::Discordant, int threads = 1);

// Same, over an existing table (e.g. ingested neural scores).
CorrelationResult correlate(const Corpus& corpus, const ScoreTable& table,
                            Aggregation aggregation, TiePolicy policy = TiePolicy::Discordant);

// Single-reference evaluation where a seeded uniform choice of
// ceil(fraction * |S|) segments takes its reference from level_b and the rest
// from level_a.
CorrelationResult mix_references(const Corpus& corpus, const MetricId& metric,
                                 const std::string& level_a, const std::string& level_b,
                                 double fraction, uint64_t seed, int threads = 1);

struct SamplingCurvePoint {
  int x = 0;                    // references sampled per segment
  double mean_tau = 0.0;        // mean over repetitions
  double ci99_halfwidth = 0.0;  // 99% Student-t interval; +inf when n < 2
  int n = 0;                    // repetitions
};

// For each x in [x_min, x_max]: per repetition, sample x references per
// segment uniformly without replacement from the pool selector (independent
// across segments), aggregate by average, correlate; report mean tau and the
// 99% t-interval half-width across repetitions.
std::vector<SamplingCurvePoint> sampling_curve(const Corpus& corpus, const MetricId& metric,
                                               const std::string& pool_selector, int x_min,
                                               int x_max, int repetitions, uint64_t seed,
                                               int threads = 1);

struct RawScoreReport {
  std::vector<std::string> selectors;
  std::vector<MetricId> metrics;
  // means[i][j]: mean raw score of metrics[i] under selectors[j] over every
  // (system, segment, reference) cell; lower-better metrics are negated when
  // flipped is set.
  std::vector<std::vector<double>> means;
  bool flipped = false;
};

RawScoreReport raw_score_report(const Corpus& corpus, const std::vector<MetricId>& metrics,
                                const std::vector<std::string>& selectors, bool flip_lower_better,
                                int threads = 1);

// 99% two-sided Student-t half-width for a sample of the given size;
// +infinity when fewer than two samples.
double t_ci99_halfwidth(const std::vector<double>& samples);

}  // namespace refeval

#endif  // REFEVAL_METAEVAL_HPP
