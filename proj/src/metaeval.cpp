#include "refeval/metaeval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "refeval/error.hpp"
#include "refeval/parallel.hpp"
#include "refeval/rng.hpp"
#include "refeval/tsv.hpp"

namespace refeval {

std::vector<DarrPair> build_darr_pairs(const Corpus& corpus, double threshold) {
  std::vector<DarrPair> pairs;
  for (const auto& seg : corpus.segments) {
    for (size_t i = 0; i < corpus.systems.size(); ++i) {
      for (size_t j = i + 1; j < corpus.systems.size(); ++j) {
        double a = corpus.human_score(corpus.systems[i], seg.id);
        double b = corpus.human_score(corpus.systems[j], seg.id);
        if (std::abs(a - b) > threshold) {
          if (a > b) {
            pairs.push_back({seg.id, corpus.systems[i], corpus.systems[j]});
          } else {
            pairs.push_back({seg.id, corpus.systems[j], corpus.systems[i]});
          }
        }
      }
    }
  }
  return pairs;
}

std::string_view to_string(Aggregation a) {
  switch (a) {
    case Aggregation::Single: return "single";
    case Aggregation::Average: return "avg";
    default: return "max";
  }
}

Aggregation aggregation_from_string(std::string_view s) {
  if (s == "single") return Aggregation::Single;
  if (s == "avg" || s == "average") return Aggregation::Average;
  if (s == "max") return Aggregation::Max;
  throw UsageError("unknown aggregation '" + std::string(s) + "' (expected single, avg or max)");
}

std::string_view to_string(TiePolicy p) {
  switch (p) {
    case TiePolicy::Discordant: return "discordant";
    case TiePolicy::Exclude: return "exclude";
    default: return "half";
  }
}

TiePolicy tie_policy_from_string(std::string_view s) {
  if (s == "discordant") return TiePolicy::Discordant;
  if (s == "exclude") return TiePolicy::Exclude;
  if (s == "half") return TiePolicy::HalfCredit;
  throw UsageError("unknown tie policy '" + std::string(s) +
                   "' (expected discordant, exclude or half)");
}

SystemSegmentValues aggregate(const ScoreTable& table, Aggregation strategy) {
  SystemSegmentValues out;
  const auto& entries = table.entries();
  const bool lower_better = table.metric().orientation == Orientation::LowerBetter;

  size_t i = 0;
  while (i < entries.size()) {
    size_t j = i;
    double sum = 0.0;
    double best = entries[i].value;
    while (j < entries.size() && entries[j].system == entries[i].system &&
           entries[j].segment == entries[i].segment) {
      double v = entries[j].value;
      sum += v;
      if (lower_better ? v < best : v > best) best = v;
      ++j;
    }
    size_t count = j - i;
    double value = 0.0;
    switch (strategy) {
      case Aggregation::Single:
        if (count != 1) {
          throw UsageError("single aggregation needs exactly one reference score per cell, got " +
                           std::to_string(count) + " for (" + entries[i].system + ", " +
                           entries[i].segment + ")");
        }
        value = entries[i].value;
        break;
      case Aggregation::Average:
        value = sum / static_cast<double>(count);
        break;
      case Aggregation::Max:
        value = best;
        break;
    }
    out[{entries[i].system, entries[i].segment}] = value;
    i = j;
  }
  return out;
}

CorrelationResult kendall_tau(const std::vector<DarrPair>& pairs,
                              const SystemSegmentValues& values, Orientation orientation,
                              TiePolicy policy) {
  if (pairs.empty()) throw DataError("no golden pairs: tau undefined");

  size_t concordant = 0;
  size_t discordant = 0;
  size_t ties = 0;
  for (const auto& pair : pairs) {
    auto better = values.find({pair.better, pair.segment});
    auto worse = values.find({pair.worse, pair.segment});
    if (better == values.end() || worse == values.end()) {
      throw DataError("missing metric value for golden pair on segment '" + pair.segment + "'");
    }
    double vb = better->second;
    double vw = worse->second;
    if (orientation == Orientation::LowerBetter) {
      vb = -vb;
      vw = -vw;
    }
    if (vb > vw) {
      ++concordant;
    } else if (vb < vw) {
      ++discordant;
    } else {
      ++ties;
    }
  }

  const double n = static_cast<double>(pairs.size());
  double tau = 0.0;
  switch (policy) {
    case TiePolicy::Discordant:
      tau = (static_cast<double>(concordant) - static_cast<double>(discordant + ties)) / n;
      break;
    case TiePolicy::Exclude: {
      size_t decided = concordant + discordant;
      if (decided == 0) throw DataError("every golden pair is tied under the metric");
      tau = (static_cast<double>(concordant) - static_cast<double>(discordant)) /
            static_cast<double>(decided);
      break;
    }
    case TiePolicy::HalfCredit:
      tau = (static_cast<double>(concordant) - static_cast<double>(discordant)) / n;
      break;
  }

  CorrelationResult result;
  result.tau = tau;
  result.pairs = pairs.size();
  result.concordant = concordant;
  result.discordant = discordant;
  result.ties = ties;
  return result;
}

CorrelationResult correlate(const Corpus& corpus, const MetricId& metric,
                            const std::string& selector, Aggregation aggregation, TiePolicy policy,
                            int threads) {
  SelectedRefs refs = select_references(corpus, selector);
  ScoreTable table = score_all(corpus, metric, refs, threads);
  SystemSegmentValues values = aggregate(table, aggregation);
  auto pairs = build_darr_pairs(corpus);
  CorrelationResult result = kendall_tau(pairs, values, metric.orientation, policy);
  result.metric = metric;
  result.selector = selector;
  result.aggregation = aggregation;
  return result;
}

CorrelationResult correlate(const Corpus& corpus, const ScoreTable& table, Aggregation aggregation,
                            TiePolicy policy) {
  SystemSegmentValues values = aggregate(table, aggregation);
  auto pairs = build_darr_pairs(corpus);
  CorrelationResult result = kendall_tau(pairs, values, table.metric().orientation, policy);
  result.metric = table.metric();
  result.aggregation = aggregation;
  // Describe the reference configuration when the table is uniform.
  const auto& entries = table.entries();
  std::string key = entries.empty() ? "" : entries.front().ref_key;
  for (const auto& e : entries) {
    if (e.ref_key != key) {
      key = "mixed";
      break;
    }
  }
  result.selector = key;
  return result;
}

CorrelationResult mix_references(const Corpus& corpus, const MetricId& metric,
                                 const std::string& level_a, const std::string& level_b,
                                 double fraction, uint64_t seed, int threads) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw UsageError("mix fraction must be in [0, 1]");
  }
  std::vector<std::string> ids;
  ids.reserve(corpus.segments.size());
  for (const auto& seg : corpus.segments) ids.push_back(seg.id);

  Rng rng(seed);
  rng.shuffle(ids);
  size_t take_b = static_cast<size_t>(
      std::ceil(fraction * static_cast<double>(ids.size()) - 1e-12));
  take_b = std::min(take_b, ids.size());

  SelectedRefs refs;
  for (size_t i = 0; i < ids.size(); ++i) {
    const std::string& level = i < take_b ? level_b : level_a;
    refs[ids[i]] = {RefKey{level, "", ""}};
  }

  ScoreTable table = score_all(corpus, metric, refs, threads);
  SystemSegmentValues values = aggregate(table, Aggregation::Single);
  auto pairs = build_darr_pairs(corpus);
  CorrelationResult result = kendall_tau(pairs, values, metric.orientation, TiePolicy::Discordant);
  result.metric = metric;
  result.selector = "mix(" + level_a + "," + level_b + "," + tsv::format_double(fraction) + ")";
  result.aggregation = Aggregation::Single;
  return result;
}

double t_ci99_halfwidth(const std::vector<double>& samples) {
  const size_t n = samples.size();
  if (n < 2) return std::numeric_limits<double>::infinity();
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  boost::math::students_t dist(static_cast<double>(n - 1));
  double t = boost::math::quantile(dist, 0.995);
  return t * sd / std::sqrt(static_cast<double>(n));
}

std::vector<SamplingCurvePoint> sampling_curve(const Corpus& corpus, const MetricId& metric,
                                               const std::string& pool_selector, int x_min,
                                               int x_max, int repetitions, uint64_t seed,
                                               int threads) {
  if (x_min < 1 || x_max < x_min) throw UsageError("bad x range for sampling curve");
  if (repetitions < 1) throw UsageError("repetitions must be >= 1");

  SelectedRefs pool = select_references(corpus, pool_selector);
  for (const auto& [seg, keys] : pool) {
    if (static_cast<int>(keys.size()) < x_max) {
      throw UsageError("pool for segment '" + seg + "' holds " + std::to_string(keys.size()) +
                       " references, need " + std::to_string(x_max));
    }
  }

  // The sampled score never depends on what else was sampled, so the whole
  // pool is scored once and repetitions only re-aggregate.
  ScoreTable table = score_all(corpus, metric, pool, threads);
  auto pairs = build_darr_pairs(corpus);

  std::vector<SamplingCurvePoint> points;
  for (int x = x_min; x <= x_max; ++x) {
    std::vector<double> taus;
    taus.reserve(static_cast<size_t>(repetitions));
    for (int rep = 0; rep < repetitions; ++rep) {
      Rng rng = Rng(seed).derive({static_cast<uint64_t>(x), static_cast<uint64_t>(rep)});
      SystemSegmentValues values;
      for (const auto& seg : corpus.segments) {
        const auto& keys = pool.at(seg.id);
        auto picks = rng.sample_without_replacement(keys.size(), static_cast<size_t>(x));
        for (const auto& system : corpus.systems) {
          double sum = 0.0;
          for (size_t k : picks) sum += table.at(system, seg.id, keys[k].str());
          values[{system, seg.id}] = sum / static_cast<double>(x);
        }
      }
      taus.push_back(
          kendall_tau(pairs, values, metric.orientation, TiePolicy::Discordant).tau);
    }
    double mean = 0.0;
    for (double t : taus) mean += t;
    mean /= static_cast<double>(taus.size());
    points.push_back({x, mean, t_ci99_halfwidth(taus), repetitions});
  }
  return points;
}

RawScoreReport raw_score_report(const Corpus& corpus, const std::vector<MetricId>& metrics,
                                const std::vector<std::string>& selectors, bool flip_lower_better,
                                int threads) {
  RawScoreReport report;
  report.selectors = selectors;
  report.metrics = metrics;
  report.flipped = flip_lower_better;
  for (const auto& metric : metrics) {
    std::vector<double> row;
    for (const auto& selector : selectors) {
      SelectedRefs refs = select_references(corpus, selector);
      ScoreTable table = score_all(corpus, metric, refs, threads);
      double mean = 0.0;
      for (const auto& e : table.entries()) mean += e.value;
      mean /= static_cast<double>(table.entries().size());
      if (flip_lower_better && metric.orientation == Orientation::LowerBetter) mean = -mean;
      row.push_back(mean);
    }
    report.means.push_back(std::move(row));
  }
  return report;
}

}  // namespace refeval
