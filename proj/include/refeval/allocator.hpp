#ifndef REFEVAL_ALLOCATOR_HPP
#define REFEVAL_ALLOCATOR_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "refeval/corpus.hpp"
#include "refeval/metaeval.hpp"
#include "refeval/metrics.hpp"

namespace refeval {

// A source of references with a per-segment price and a fitness for
// automatic evaluation.
struct VendorLevel {
  std::string id;
  double cost = 0.0;     // > 0
  double utility = 0.0;  // > 0

  bool operator==(const VendorLevel&) const = default;
};

struct AllocationProblem {
  std::vector<std::string> segments;
  std::vector<VendorLevel> levels;
  double budget = 0.0;
  double lambda = 0.5;       // probability of attempting a promote per step
  double temperature = 1.0;  // > 0, sampling sharpness
  int patience = 1000;       // rejected attempts tolerated before halting
  uint64_t seed = 0;

  // Throws UsageError on parameter violations; DataError when the budget
  // cannot cover every segment at the cheapest level.
  void validate() const;

  static AllocationProblem from_json(const std::string& text);
  static AllocationProblem from_json_file(const std::filesystem::path& path);
  std::string to_json() const;
};

// level id -> segments bought at that level (each list sorted, no repeats).
struct Allocation {
  std::map<std::string, std::vector<std::string>> assignment;

  bool contains(const std::string& level, const std::string& segment) const;
  size_t total_purchases() const;
  double total_cost(const std::vector<VendorLevel>& levels) const;
  double total_utility(const std::vector<VendorLevel>& levels) const;

  // Coverage + budget + per-level uniqueness; throws on violation.
  void check_feasible(const std::vector<std::string>& segments,
                      const std::vector<VendorLevel>& levels, double budget) const;

  bool operator==(const Allocation&) const = default;
};

struct Transaction {
  enum class Kind { Add, Promote };
  Kind kind = Kind::Add;
  std::string segment;
  std::string level_from;  // empty for Add
  std::string level_to;
  double cost_after = 0.0;
  double utility_after = 0.0;

  bool operator==(const Transaction&) const = default;
};

struct AllocationTrace {
  std::vector<Transaction> transactions;  // committed, in order
  size_t rejected = 0;                    // attempts that failed or overshot
  double final_cost = 0.0;
  double final_utility = 0.0;
};

// Stochastic budget allocation. Starts from full coverage at the cheapest
// level, then repeatedly attempts Add (buy a segment at a level it lacks) or
// Promote (move a purchase to a higher-utility level), sampled with
// sigmoid(utility - cost)^(1/t) weights. Attempts that would overshoot the
// budget are rejected and count against patience. Deterministic per seed.
std::pair<Allocation, AllocationTrace> allocate(const AllocationProblem& problem);

// Applies a recorded trace to the initial all-cheapest state; used to audit
// that a trace reproduces its allocation.
Allocation replay_trace(const AllocationProblem& problem, const AllocationTrace& trace);

struct BruteForceResult {
  double utility = 0.0;
  Allocation best;
};

// Exhaustive oracle over per-segment nonempty level subsets. Only for tiny
// instances: requires |segments| <= 4 and |levels| <= 3.
BruteForceResult brute_force_allocate(const std::vector<std::string>& segments,
                                      const std::vector<VendorLevel>& levels, double budget);

// Scores the reference configuration an allocation induces: per segment the
// assigned levels' original references, averaged, correlated against the
// golden pairs.
CorrelationResult evaluate_allocation(const Corpus& corpus, const Allocation& allocation,
                                      const MetricId& metric, int threads = 1);

// Same, reusing a precomputed table that holds scores for every original
// reference level (avoids rescoring per allocation).
CorrelationResult evaluate_allocation(const Corpus& corpus, const Allocation& allocation,
                                      const ScoreTable& full_table);

struct GridCell {
  double budget = 0.0;
  double lambda = 0.0;
  double mean_tau = 0.0;
  double mean_refs_per_segment = 0.0;
  bool argmax = false;  // best lambda row within this budget column
};

// Budget x lambda sweep: `seeds_per_cell` allocations per cell, each
// evaluated with the metric; reports mean tau and mean references per
// segment. RNG per cell is derived from (seed, budget index, lambda index,
// repetition), so cells are order-independent.
std::vector<GridCell> grid_experiment(const Corpus& corpus, const MetricId& metric,
                                      const std::vector<double>& budgets,
                                      const std::vector<double>& lambdas,
                                      const std::vector<VendorLevel>& levels, double temperature,
                                      int patience, int seeds_per_cell, uint64_t seed,
                                      int threads = 1);

// The four-level cost/utility table used for the corpus-scale experiments.
std::vector<VendorLevel> default_vendor_levels();

void export_allocation(const Allocation& allocation, const std::filesystem::path& path);
void export_trace(const AllocationProblem& problem, const AllocationTrace& trace,
                  const std::filesystem::path& path);
void export_grid(const std::vector<GridCell>& grid, const std::filesystem::path& path);

}  // namespace refeval

#endif  // REFEVAL_ALLOCATOR_HPP
