#include "refeval/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "refeval/error.hpp"
#include "refeval/parallel.hpp"
#include "refeval/rng.hpp"
#include "refeval/tsv.hpp"

namespace refeval {

using nlohmann::json;

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double min_cost(const std::vector<VendorLevel>& levels) {
  double m = levels.front().cost;
  for (const auto& l : levels) m = std::min(m, l.cost);
  return m;
}

}  // namespace

void AllocationProblem::validate() const {
  if (segments.empty()) throw UsageError("allocation problem has no segments");
  std::set<std::string> seg_set(segments.begin(), segments.end());
  if (seg_set.size() != segments.size()) throw UsageError("duplicate segment id in problem");
  if (levels.empty()) throw UsageError("allocation problem has no levels");
  std::set<std::string> level_set;
  for (const auto& l : levels) {
    if (l.id.empty()) throw UsageError("level without id");
    if (!(l.cost > 0.0)) throw UsageError("level '" + l.id + "' needs cost > 0");
    if (!(l.utility > 0.0)) throw UsageError("level '" + l.id + "' needs utility > 0");
    if (!level_set.insert(l.id).second) throw UsageError("duplicate level id '" + l.id + "'");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("lambda must be in [0, 1]");
  if (!(temperature > 0.0)) throw UsageError("temperature must be > 0");
  if (patience < 1) throw UsageError("patience must be >= 1");
  double mandatory = static_cast<double>(segments.size()) * min_cost(levels);
  if (budget < mandatory) {
    throw DataError("budget below mandatory coverage: need at least " +
                    tsv::format_double(mandatory));
  }
}

AllocationProblem AllocationProblem::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad problem json: ") + e.what());
  }
  AllocationProblem p;
  try {
    p.segments = j.at("segments").get<std::vector<std::string>>();
    for (const auto& level : j.at("levels")) {
      p.levels.push_back({level.at("id").get<std::string>(), level.at("cost").get<double>(),
                          level.at("utility").get<double>()});
    }
    p.budget = j.at("budget").get<double>();
    if (j.contains("lambda")) p.lambda = j["lambda"].get<double>();
    if (j.contains("temperature")) p.temperature = j["temperature"].get<double>();
    if (j.contains("patience")) p.patience = j["patience"].get<int>();
    if (j.contains("seed")) p.seed = j["seed"].get<uint64_t>();
  } catch (const json::exception& e) {
    throw DataError(std::string("bad problem json: ") + e.what());
  }
  return p;
}

AllocationProblem AllocationProblem::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

std::string AllocationProblem::to_json() const {
  json j;
  j["segments"] = segments;
  j["levels"] = json::array();
  for (const auto& l : levels) {
    j["levels"].push_back({{"id", l.id}, {"cost", l.cost}, {"utility", l.utility}});
  }
  j["budget"] = budget;
  j["lambda"] = lambda;
  j["temperature"] = temperature;
  j["patience"] = patience;
  j["seed"] = seed;
  return j.dump(2);
}

bool Allocation::contains(const std::string& level, const std::string& segment) const {
  auto it = assignment.find(level);
  if (it == assignment.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), segment);
}

size_t Allocation::total_purchases() const {
  size_t n = 0;
  for (const auto& [level, segs] : assignment) n += segs.size();
  return n;
}

double Allocation::total_cost(const std::vector<VendorLevel>& levels) const {
  double c = 0.0;
  for (const auto& [id, segs] : assignment) {
    for (const auto& l : levels) {
      if (l.id == id) c += l.cost * static_cast<double>(segs.size());
    }
  }
  return c;
}

double Allocation::total_utility(const std::vector<VendorLevel>& levels) const {
  double u = 0.0;
  for (const auto& [id, segs] : assignment) {
    for (const auto& l : levels) {
      if (l.id == id) u += l.utility * static_cast<double>(segs.size());
    }
  }
  return u;
}

void Allocation::check_feasible(const std::vector<std::string>& segments,
                                const std::vector<VendorLevel>& levels, double budget) const {
  std::set<std::string> known_levels;
  for (const auto& l : levels) known_levels.insert(l.id);
  std::set<std::string> covered;
  for (const auto& [id, segs] : assignment) {
    if (!known_levels.count(id)) throw DataError("allocation uses unknown level '" + id + "'");
    if (!std::is_sorted(segs.begin(), segs.end())) {
      throw DataError("allocation for level '" + id + "' not sorted");
    }
    for (size_t i = 1; i < segs.size(); ++i) {
      if (segs[i - 1] == segs[i]) {
        throw DataError("segment '" + segs[i] + "' listed twice at level '" + id + "'");
      }
    }
    covered.insert(segs.begin(), segs.end());
  }
  for (const auto& s : segments) {
    if (!covered.count(s)) throw DataError("segment '" + s + "' has no reference");
  }
  if (covered.size() != segments.size()) {
    throw DataError("allocation covers segments outside the problem");
  }
  if (total_cost(levels) > budget) throw DataError("allocation exceeds budget");
}

// allocate -------------------------------------------------------------------

std::pair<Allocation, AllocationTrace> allocate(const AllocationProblem& problem) {
  problem.validate();
  const auto& levels = problem.levels;
  const size_t n_levels = levels.size();
  const size_t n_segments = problem.segments.size();

  // Cheapest level first; ties keep the input order.
  std::vector<size_t> order(n_levels);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return levels[a].cost < levels[b].cost; });
  const size_t cheapest = order[0];

  std::vector<std::vector<char>> member(n_levels, std::vector<char>(n_segments, 0));
  std::vector<size_t> member_count(n_levels, 0);
  member[cheapest].assign(n_segments, 1);
  member_count[cheapest] = n_segments;

  double cost = static_cast<double>(n_segments) * levels[cheapest].cost;
  double utility = static_cast<double>(n_segments) * levels[cheapest].utility;

  const double inv_t = 1.0 / problem.temperature;
  std::vector<double> add_weight(n_levels);
  std::vector<double> remove_weight(n_levels);
  for (size_t l = 0; l < n_levels; ++l) {
    add_weight[l] = std::pow(sigmoid(levels[l].utility - levels[l].cost), inv_t);
    remove_weight[l] = std::pow(sigmoid(levels[l].cost - levels[l].utility), inv_t);
  }

  Rng rng(problem.seed);
  AllocationTrace trace;
  int patience_left = problem.patience;

  auto nth_absent = [&](size_t level, size_t nth) {
    for (size_t s = 0; s < n_segments; ++s) {
      if (!member[level][s]) {
        if (nth == 0) return s;
        --nth;
      }
    }
    throw DataError("internal: candidate segment not found");
  };

  while (cost < problem.budget && patience_left > 0) {
    size_t total_available = 0;
    for (size_t l = 0; l < n_levels; ++l) total_available += n_segments - member_count[l];
    if (total_available == 0) break;  // every segment already at every level

    const bool want_promote = rng.next_double() < problem.lambda;

    // Draw the destination pair from X+; every segment at a level shares the
    // level's weight, so the level is drawn first with availability-scaled
    // weight and the segment uniformly within it.
    std::vector<double> weights(n_levels);
    for (size_t l = 0; l < n_levels; ++l) {
      weights[l] = static_cast<double>(n_segments - member_count[l]) * add_weight[l];
    }
    const size_t dest = rng.discrete(weights);
    const size_t seg = nth_absent(dest, rng.below(n_segments - member_count[dest]));

    if (!want_promote) {
      double next_cost = cost + levels[dest].cost;
      if (next_cost <= problem.budget) {
        member[dest][seg] = 1;
        ++member_count[dest];
        cost = next_cost;
        utility += levels[dest].utility;
        trace.transactions.push_back({Transaction::Kind::Add, problem.segments[seg], "",
                                      levels[dest].id, cost, utility});
      } else {
        --patience_left;
        ++trace.rejected;
      }
    } else {
      // Source: a level currently holding the segment with strictly lower
      // utility than the destination.
      std::vector<size_t> sources;
      std::vector<double> source_weights;
      for (size_t l = 0; l < n_levels; ++l) {
        if (member[l][seg] && levels[l].utility < levels[dest].utility) {
          sources.push_back(l);
          source_weights.push_back(remove_weight[l]);
        }
      }
      if (sources.empty()) {
        --patience_left;
        ++trace.rejected;
        continue;
      }
      const size_t src = sources[rng.discrete(source_weights)];
      double next_cost = cost + levels[dest].cost - levels[src].cost;
      if (next_cost <= problem.budget) {
        member[dest][seg] = 1;
        ++member_count[dest];
        member[src][seg] = 0;
        --member_count[src];
        cost = next_cost;
        utility += levels[dest].utility - levels[src].utility;
        trace.transactions.push_back({Transaction::Kind::Promote, problem.segments[seg],
                                      levels[src].id, levels[dest].id, cost, utility});
      } else {
        --patience_left;
        ++trace.rejected;
      }
    }
  }

  Allocation allocation;
  for (size_t l = 0; l < n_levels; ++l) {
    if (member_count[l] == 0) continue;
    std::vector<std::string> segs;
    segs.reserve(member_count[l]);
    for (size_t s = 0; s < n_segments; ++s) {
      if (member[l][s]) segs.push_back(problem.segments[s]);
    }
    std::sort(segs.begin(), segs.end());
    allocation.assignment[levels[l].id] = std::move(segs);
  }
  trace.final_cost = cost;
  trace.final_utility = utility;
  return {std::move(allocation), std::move(trace)};
}

Allocation replay_trace(const AllocationProblem& problem, const AllocationTrace& trace) {
  const auto& levels = problem.levels;
  std::vector<size_t> order(levels.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return levels[a].cost < levels[b].cost; });

  std::map<std::string, std::set<std::string>> state;
  state[levels[order[0]].id] =
      std::set<std::string>(problem.segments.begin(), problem.segments.end());

  for (const auto& tx : trace.transactions) {
    auto& to = state[tx.level_to];
    if (!to.insert(tx.segment).second) {
      throw DataError("trace replay: segment '" + tx.segment + "' already at level '" +
                      tx.level_to + "'");
    }
    if (tx.kind == Transaction::Kind::Promote) {
      auto from = state.find(tx.level_from);
      if (from == state.end() || from->second.erase(tx.segment) == 0) {
        throw DataError("trace replay: segment '" + tx.segment + "' not at level '" +
                        tx.level_from + "'");
      }
    }
  }

  Allocation allocation;
  for (const auto& [id, segs] : state) {
    if (segs.empty()) continue;
    allocation.assignment[id] = std::vector<std::string>(segs.begin(), segs.end());
  }
  return allocation;
}

// brute force oracle -----------------------------------------------------------

BruteForceResult brute_force_allocate(const std::vector<std::string>& segments,
                                      const std::vector<VendorLevel>& levels, double budget) {
  if (segments.size() > 4 || levels.size() > 3) {
    throw UsageError("instance too large for brute force (need |segments| <= 4, |levels| <= 3)");
  }
  if (segments.empty() || levels.empty()) throw UsageError("empty brute-force instance");

  const size_t n_masks = (1u << levels.size()) - 1;  // nonempty subsets
  std::vector<double> mask_cost(n_masks + 1, 0.0);
  std::vector<double> mask_util(n_masks + 1, 0.0);
  for (size_t mask = 1; mask <= n_masks; ++mask) {
    for (size_t l = 0; l < levels.size(); ++l) {
      if (mask & (1u << l)) {
        mask_cost[mask] += levels[l].cost;
        mask_util[mask] += levels[l].utility;
      }
    }
  }

  std::vector<size_t> choice(segments.size(), 1);  // mask per segment
  bool found = false;
  double best_util = 0.0;
  std::vector<size_t> best_choice;
  while (true) {
    double cost = 0.0;
    double util = 0.0;
    for (size_t mask : choice) {
      cost += mask_cost[mask];
      util += mask_util[mask];
    }
    if (cost <= budget && (!found || util > best_util)) {
      found = true;
      best_util = util;
      best_choice = choice;
    }
    // next assignment in mixed-radix order
    size_t pos = 0;
    while (pos < choice.size()) {
      if (choice[pos] < n_masks) {
        ++choice[pos];
        break;
      }
      choice[pos] = 1;
      ++pos;
    }
    if (pos == choice.size()) break;
  }

  if (!found) throw DataError("budget below mandatory coverage");

  BruteForceResult result;
  result.utility = best_util;
  for (size_t l = 0; l < levels.size(); ++l) {
    std::vector<std::string> segs;
    for (size_t s = 0; s < segments.size(); ++s) {
      if (best_choice[s] & (1u << l)) segs.push_back(segments[s]);
    }
    if (!segs.empty()) {
      std::sort(segs.begin(), segs.end());
      result.best.assignment[levels[l].id] = std::move(segs);
    }
  }
  return result;
}

// evaluation --------------------------------------------------------------------

namespace {

// segment -> sorted original-reference keys of its assigned levels
std::map<std::string, std::vector<std::string>> levels_per_segment(const Corpus& corpus,
                                                                   const Allocation& allocation) {
  std::map<std::string, std::vector<std::string>> by_segment;
  for (const auto& [level, segs] : allocation.assignment) {
    for (const auto& s : segs) by_segment[s].push_back(level);
  }
  for (const auto& seg : corpus.segments) {
    auto it = by_segment.find(seg.id);
    if (it == by_segment.end()) {
      throw DataError("allocation leaves segment '" + seg.id + "' without a reference");
    }
    std::sort(it->second.begin(), it->second.end());
  }
  return by_segment;
}

}  // namespace

CorrelationResult evaluate_allocation(const Corpus& corpus, const Allocation& allocation,
                                      const MetricId& metric, int threads) {
  auto by_segment = levels_per_segment(corpus, allocation);
  SelectedRefs refs;
  for (const auto& [seg, levels] : by_segment) {
    std::vector<RefKey> keys;
    for (const auto& level : levels) keys.push_back(RefKey{level, "", ""});
    refs[seg] = std::move(keys);
  }
  ScoreTable table = score_all(corpus, metric, refs, threads);
  SystemSegmentValues values = aggregate(table, Aggregation::Average);
  auto pairs = build_darr_pairs(corpus);
  CorrelationResult result = kendall_tau(pairs, values, metric.orientation, TiePolicy::Discordant);
  result.metric = metric;
  result.selector = "allocation";
  result.aggregation = Aggregation::Average;
  return result;
}

CorrelationResult evaluate_allocation(const Corpus& corpus, const Allocation& allocation,
                                      const ScoreTable& full_table) {
  auto by_segment = levels_per_segment(corpus, allocation);
  SystemSegmentValues values;
  for (const auto& seg : corpus.segments) {
    const auto& levels = by_segment.at(seg.id);
    for (const auto& system : corpus.systems) {
      double sum = 0.0;
      for (const auto& level : levels) sum += full_table.at(system, seg.id, level);
      values[{system, seg.id}] = sum / static_cast<double>(levels.size());
    }
  }
  auto pairs = build_darr_pairs(corpus);
  CorrelationResult result =
      kendall_tau(pairs, values, full_table.metric().orientation, TiePolicy::Discordant);
  result.metric = full_table.metric();
  result.selector = "allocation";
  result.aggregation = Aggregation::Average;
  return result;
}

// grid ---------------------------------------------------------------------------

std::vector<VendorLevel> default_vendor_levels() {
  return {{"R1", 1.0, 1.0}, {"R2", 1.0, 2.0}, {"R3", 2.0, 4.0}, {"R4", 3.0, 3.0}};
}

std::vector<GridCell> grid_experiment(const Corpus& corpus, const MetricId& metric,
                                      const std::vector<double>& budgets,
                                      const std::vector<double>& lambdas,
                                      const std::vector<VendorLevel>& levels, double temperature,
                                      int patience, int seeds_per_cell, uint64_t seed,
                                      int threads) {
  if (budgets.empty() || lambdas.empty()) throw UsageError("grid needs budgets and lambdas");
  if (seeds_per_cell < 1) throw UsageError("grid needs seeds_per_cell >= 1");

  std::vector<std::string> segment_ids;
  for (const auto& seg : corpus.segments) segment_ids.push_back(seg.id);

  // Score every (segment, level) reference once; allocations only re-aggregate.
  SelectedRefs refs;
  for (const auto& seg : corpus.segments) {
    std::vector<RefKey> keys;
    for (const auto& level : levels) keys.push_back(RefKey{level.id, "", ""});
    refs[seg.id] = std::move(keys);
  }
  ScoreTable full_table = score_all(corpus, metric, refs, threads);

  const size_t n_cells = budgets.size() * lambdas.size();
  std::vector<GridCell> cells(n_cells);

  parallel_for(n_cells, threads, [&](size_t cell_index) {
    const size_t bi = cell_index / lambdas.size();
    const size_t li = cell_index % lambdas.size();

    double tau_sum = 0.0;
    double refs_sum = 0.0;
    for (int rep = 0; rep < seeds_per_cell; ++rep) {
      AllocationProblem problem;
      problem.segments = segment_ids;
      problem.levels = levels;
      problem.budget = budgets[bi];
      problem.lambda = lambdas[li];
      problem.temperature = temperature;
      problem.patience = patience;
      problem.seed = Rng(seed)
                         .derive({static_cast<uint64_t>(bi), static_cast<uint64_t>(li),
                                  static_cast<uint64_t>(rep)})
                         .next_u64();
      auto [allocation, trace] = allocate(problem);
      allocation.check_feasible(problem.segments, problem.levels, problem.budget);
      tau_sum += evaluate_allocation(corpus, allocation, full_table).tau;
      refs_sum += static_cast<double>(allocation.total_purchases()) /
                  static_cast<double>(segment_ids.size());
    }
    GridCell& cell = cells[cell_index];
    cell.budget = budgets[bi];
    cell.lambda = lambdas[li];
    cell.mean_tau = tau_sum / seeds_per_cell;
    cell.mean_refs_per_segment = refs_sum / seeds_per_cell;
  });

  // Flag the best lambda within each budget column (first on ties).
  for (size_t bi = 0; bi < budgets.size(); ++bi) {
    size_t best = bi * lambdas.size();
    for (size_t li = 1; li < lambdas.size(); ++li) {
      size_t idx = bi * lambdas.size() + li;
      if (cells[idx].mean_tau > cells[best].mean_tau) best = idx;
    }
    cells[best].argmax = true;
  }
  return cells;
}

void export_allocation(const Allocation& allocation, const std::filesystem::path& path) {
  tsv::Writer w(path, {"level", "seg_id"});
  for (const auto& [level, segs] : allocation.assignment) {
    for (const auto& s : segs) w.row({level, s});
  }
}

void export_trace(const AllocationProblem& problem, const AllocationTrace& trace,
                  const std::filesystem::path& path) {
  (void)problem;
  tsv::Writer w(path, {"step", "action", "seg_id", "level_from", "level_to", "cost_after",
                       "utility_after"});
  size_t step = 1;
  for (const auto& tx : trace.transactions) {
    w.row({std::to_string(step++), tx.kind == Transaction::Kind::Add ? "add" : "promote",
           tx.segment, tx.level_from, tx.level_to, tsv::format_double(tx.cost_after),
           tsv::format_double(tx.utility_after)});
  }
}

void export_grid(const std::vector<GridCell>& grid, const std::filesystem::path& path) {
  tsv::Writer w(path, {"budget", "lambda", "mean_tau", "mean_refs_per_segment", "argmax_flag"});
  for (const auto& cell : grid) {
    w.row({tsv::format_double(cell.budget), tsv::format_double(cell.lambda),
           tsv::format_double(cell.mean_tau), tsv::format_double(cell.mean_refs_per_segment),
           cell.argmax ? "1" : "0"});
  }
}

}  // namespace refeval
