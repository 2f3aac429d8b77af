// Command-line front end: imports the corpus, emits correlation tables, raw
// score reports, sampling curves, reference mixes and budget allocations as
// plot-ready TSV files. Every run writes a manifest.json echoing the resolved
// configuration; all randomness is seeded, so reruns are byte-identical.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refeval/allocator.hpp"
#include "refeval/corpus.hpp"
#include "refeval/error.hpp"
#include "refeval/metaeval.hpp"
#include "refeval/metrics.hpp"
#include "refeval/tsv.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace refeval;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

void write_manifest(const fs::path& out_dir, const std::string& command, const json& options) {
  fs::create_directories(out_dir);
  json manifest;
  manifest["command"] = command;
  manifest["options"] = options;
  std::ofstream f(out_dir / "manifest.json");
  f << manifest.dump(2) << "\n";
}

std::string round3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string round1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::vector<std::string> original_levels(const Corpus& corpus) {
  std::set<std::string> levels;
  for (const auto& seg : corpus.segments) {
    for (const auto& ref : seg.references) {
      if (!ref.key.is_post_edit()) levels.insert(ref.key.level);
    }
  }
  return {levels.begin(), levels.end()};
}

std::vector<std::string> proficiencies(const Corpus& corpus) {
  std::set<std::string> profs;
  for (const auto& seg : corpus.segments) {
    for (const auto& ref : seg.references) {
      if (ref.key.is_post_edit()) profs.insert(ref.key.proficiency);
    }
  }
  return {profs.begin(), profs.end()};
}

std::vector<MetricId> parse_metric_list(const std::vector<std::string>& names) {
  std::vector<MetricId> out;
  for (const auto& n : names) out.push_back(native_metric(n));
  return out;
}

void write_correlation_report(const fs::path& path, const std::vector<CorrelationResult>& rows) {
  tsv::Writer w(path, {"metric", "selector", "aggregation", "tau", "pairs", "concordant",
                       "discordant", "ties"});
  for (const auto& r : rows) {
    w.row({r.metric.name, r.selector, std::string(to_string(r.aggregation)),
           tsv::format_double(r.tau), std::to_string(r.pairs), std::to_string(r.concordant),
           std::to_string(r.discordant), std::to_string(r.ties)});
  }
}

// Ingested tables for the neural rows of the correlation table. Each file
// carries its own name/orientation in the sidecar unless flags override.
std::vector<ScoreTable> load_score_files(const Corpus& corpus,
                                         const std::vector<std::string>& files,
                                         const std::string& name_override,
                                         const std::string& orientation_override) {
  std::vector<ScoreTable> tables;
  for (const auto& file : files) {
    if (!name_override.empty() || !orientation_override.empty()) {
      std::string name = name_override.empty() ? fs::path(file).stem().string() : name_override;
      Orientation o = orientation_override.empty()
                          ? Orientation::HigherBetter
                          : orientation_from_string(orientation_override);
      tables.push_back(ingest_scores(corpus, file, name, o));
    } else {
      tables.push_back(ingest_scores(corpus, file));
    }
  }
  return tables;
}

// --- subcommand bodies -----------------------------------------------------

int cmd_import(const std::string& from, const std::string& format, const std::string& out) {
  Corpus corpus = import_corpus(from, format);
  CorpusCounts c = corpus.counts();
  std::cout << "segments=" << c.segments << " docs=" << c.documents << " systems=" << c.systems
            << " refs=" << c.references << " postedits=" << c.post_edits << "\n";
  if (!out.empty()) {
    export_corpus(corpus, out);
    write_manifest(out, "import", {{"from", from}, {"format", format}, {"out", out}});
  }
  return kExitOk;
}

int cmd_table2(const std::string& corpus_dir, const std::vector<std::string>& metric_names,
               const std::vector<std::string>& score_files, const std::string& scores_name,
               const std::string& scores_orientation, const std::string& tie_policy, int threads,
               const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  std::vector<std::string> levels = original_levels(corpus);
  TiePolicy policy = tie_policy_from_string(tie_policy);

  // metric name -> (column -> tau)
  std::vector<std::pair<std::string, std::map<std::string, double>>> rows;
  for (const auto& metric : parse_metric_list(metric_names)) {
    std::map<std::string, double> cells;
    for (const auto& level : levels) {
      cells[level] =
          correlate(corpus, metric, level, Aggregation::Single, policy, threads).tau;
    }
    rows.emplace_back(metric.name, std::move(cells));
  }

  bool have_none_column = false;
  for (const auto& table : load_score_files(corpus, score_files, scores_name, scores_orientation)) {
    CorrelationResult r = correlate(corpus, table, Aggregation::Single, policy);
    std::string column = r.selector;  // uniform ref key of the file
    if (column == "none") have_none_column = true;
    bool placed = false;
    for (auto& [name, cells] : rows) {
      if (name == table.metric().name) {
        cells[column] = r.tau;
        placed = true;
        break;
      }
    }
    if (!placed) {
      rows.emplace_back(table.metric().name,
                        std::map<std::string, double>{{column, r.tau}});
    }
  }

  fs::create_directories(out);
  std::vector<std::string> header{"metric"};
  header.insert(header.end(), levels.begin(), levels.end());
  if (have_none_column) header.push_back("none");
  tsv::Writer w(fs::path(out) / "table2.tsv", header);
  for (const auto& [name, cells] : rows) {
    std::vector<std::string> fields{name};
    for (size_t i = 1; i < header.size(); ++i) {
      auto it = cells.find(header[i]);
      fields.push_back(it == cells.end() ? "" : round3(it->second));
    }
    w.row(fields);
  }
  write_manifest(out, "table2",
                 {{"corpus", corpus_dir},
                  {"metrics", metric_names},
                  {"scores", score_files},
                  {"tie_policy", tie_policy},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_table3(const std::string& corpus_dir, const std::vector<std::string>& metric_names,
               std::vector<std::string> selectors, const std::string& tie_policy, int threads,
               const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  if (selectors.empty()) selectors = {"R3", "R{3,4}", "Rx", "Rx^PE"};
  TiePolicy policy = tie_policy_from_string(tie_policy);
  auto metrics = parse_metric_list(metric_names);

  fs::create_directories(out);
  std::vector<std::string> header{"aggregation", "metric"};
  header.insert(header.end(), selectors.begin(), selectors.end());
  tsv::Writer w(fs::path(out) / "table3.tsv", header);

  for (Aggregation agg : {Aggregation::Average, Aggregation::Max}) {
    std::vector<double> column_sums(selectors.size(), 0.0);
    for (const auto& metric : metrics) {
      std::vector<std::string> fields{std::string(to_string(agg)), metric.name};
      for (size_t i = 0; i < selectors.size(); ++i) {
        double tau = correlate(corpus, metric, selectors[i], agg, policy, threads).tau;
        column_sums[i] += tau;
        fields.push_back(round3(tau));
      }
      w.row(fields);
    }
    std::vector<std::string> avg_fields{std::string(to_string(agg)), "average"};
    for (double sum : column_sums) {
      avg_fields.push_back(round3(sum / static_cast<double>(metrics.size())));
    }
    w.row(avg_fields);
  }
  write_manifest(out, "table3",
                 {{"corpus", corpus_dir},
                  {"metrics", metric_names},
                  {"selectors", selectors},
                  {"tie_policy", tie_policy},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_table5(const std::string& corpus_dir, const std::vector<std::string>& metric_names,
               std::vector<std::string> selectors, bool flip, int threads,
               const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  if (selectors.empty()) {
    for (const auto& level : original_levels(corpus)) selectors.push_back(level);
  }
  RawScoreReport report =
      raw_score_report(corpus, parse_metric_list(metric_names), selectors, flip, threads);

  fs::create_directories(out);
  std::vector<std::string> header{"metric"};
  header.insert(header.end(), selectors.begin(), selectors.end());
  tsv::Writer w(fs::path(out) / "table5.tsv", header);
  for (size_t i = 0; i < report.metrics.size(); ++i) {
    std::vector<std::string> fields{report.metrics[i].name};
    for (double v : report.means[i]) fields.push_back(round1(v));
    w.row(fields);
  }
  write_manifest(out, "table5",
                 {{"corpus", corpus_dir},
                  {"metrics", metric_names},
                  {"selectors", selectors},
                  {"flip", flip},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_pe_diff(const std::string& corpus_dir, const std::vector<std::string>& metric_names,
                const std::string& tie_policy, int threads, const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  std::vector<std::string> levels = original_levels(corpus);
  std::vector<std::string> profs = proficiencies(corpus);
  if (profs.empty()) throw DataError("corpus has no post-edited references");
  TiePolicy policy = tie_policy_from_string(tie_policy);
  auto metrics = parse_metric_list(metric_names);

  // Base correlations per level, per metric.
  std::map<std::pair<std::string, std::string>, double> base;
  for (const auto& metric : metrics) {
    for (const auto& level : levels) {
      base[{metric.name, level}] =
          correlate(corpus, metric, level, Aggregation::Single, policy, threads).tau;
    }
  }

  fs::create_directories(out);
  std::vector<std::string> header{"proficiency", "metric"};
  for (const auto& level : levels) header.push_back(level + "^PE-" + level);
  tsv::Writer w(fs::path(out) / "pe_diff.tsv", header);

  for (const auto& prof : profs) {
    std::vector<double> column_sums(levels.size(), 0.0);
    for (const auto& metric : metrics) {
      std::vector<std::string> fields{prof, metric.name};
      for (size_t i = 0; i < levels.size(); ++i) {
        std::string selector = levels[i] + "^PE(" + prof + ")";
        double tau_pe =
            correlate(corpus, metric, selector, Aggregation::Average, policy, threads).tau;
        double delta = tau_pe - base[{metric.name, levels[i]}];
        column_sums[i] += delta;
        fields.push_back(round3(delta));
      }
      w.row(fields);
    }
    std::vector<std::string> avg{prof, "average"};
    for (double sum : column_sums) {
      avg.push_back(round3(sum / static_cast<double>(metrics.size())));
    }
    w.row(avg);
  }
  write_manifest(out, "pe_diff",
                 {{"corpus", corpus_dir},
                  {"metrics", metric_names},
                  {"tie_policy", tie_policy},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_score(const std::string& corpus_dir, const std::string& metric_name,
              const std::string& selector, int threads, const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  MetricId metric = native_metric(metric_name);
  ScoreTable table = score_all(corpus, metric, select_references(corpus, selector), threads);
  fs::create_directories(out);
  table.export_tsv(fs::path(out) / "scores.tsv");
  for (const auto& warning : table.warnings()) {
    std::cerr << "warning: " << warning.system << "/" << warning.segment << "/" << warning.ref_key
              << ": " << warning.message << "\n";
  }
  write_manifest(out, "score",
                 {{"corpus", corpus_dir},
                  {"metric", metric_name},
                  {"selector", selector},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_curve(const std::string& corpus_dir, const std::string& metric_name,
              const std::string& pool, int x_min, int x_max, int reps, uint64_t seed, int threads,
              const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  auto points =
      sampling_curve(corpus, native_metric(metric_name), pool, x_min, x_max, reps, seed, threads);
  fs::create_directories(out);
  tsv::Writer w(fs::path(out) / "curve.tsv", {"x", "mean_tau", "ci99_halfwidth", "n"});
  for (const auto& p : points) {
    w.row({std::to_string(p.x), tsv::format_double(p.mean_tau),
           tsv::format_double(p.ci99_halfwidth), std::to_string(p.n)});
  }
  write_manifest(out, "curve",
                 {{"corpus", corpus_dir},
                  {"metric", metric_name},
                  {"pool", pool},
                  {"x_min", x_min},
                  {"x_max", x_max},
                  {"reps", reps},
                  {"seed", seed},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_mix(const std::string& corpus_dir, const std::string& metric_name,
            const std::string& level_a, const std::string& level_b,
            const std::vector<double>& fractions, uint64_t seed, int threads,
            const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  MetricId metric = native_metric(metric_name);
  std::vector<CorrelationResult> rows;
  for (double fraction : fractions) {
    rows.push_back(mix_references(corpus, metric, level_a, level_b, fraction, seed, threads));
  }
  fs::create_directories(out);
  write_correlation_report(fs::path(out) / "mix.tsv", rows);
  write_manifest(out, "mix",
                 {{"corpus", corpus_dir},
                  {"metric", metric_name},
                  {"level_a", level_a},
                  {"level_b", level_b},
                  {"fractions", fractions},
                  {"seed", seed},
                  {"threads", threads}});
  return kExitOk;
}

int cmd_allocate(const std::string& problem_file, const std::string& corpus_dir, double budget,
                 double lambda, double temperature, int patience, uint64_t seed,
                 const std::string& metric_name, int threads, const std::string& out) {
  AllocationProblem problem;
  if (!problem_file.empty()) {
    problem = AllocationProblem::from_json_file(problem_file);
  } else {
    if (corpus_dir.empty()) {
      throw UsageError("allocate needs either --problem or --corpus with --budget");
    }
    Corpus corpus = import_corpus(corpus_dir);
    for (const auto& seg : corpus.segments) problem.segments.push_back(seg.id);
    problem.levels = default_vendor_levels();
    problem.budget = budget;
    problem.lambda = lambda;
    problem.temperature = temperature;
    problem.patience = patience;
    problem.seed = seed;
  }

  auto [allocation, trace] = allocate(problem);
  allocation.check_feasible(problem.segments, problem.levels, problem.budget);
  if (!(replay_trace(problem, trace) == allocation)) {
    throw DataError("trace replay does not reproduce the allocation");
  }

  fs::create_directories(out);
  export_allocation(allocation, fs::path(out) / "allocation.tsv");
  export_trace(problem, trace, fs::path(out) / "trace.tsv");
  {
    std::ofstream f(fs::path(out) / "problem.json");
    f << problem.to_json() << "\n";
  }
  std::cout << "cost=" << tsv::format_double(trace.final_cost)
            << " utility=" << tsv::format_double(trace.final_utility)
            << " transactions=" << trace.transactions.size() << " rejected=" << trace.rejected
            << "\n";

  if (!metric_name.empty()) {
    if (corpus_dir.empty()) throw UsageError("--metric needs --corpus to evaluate against");
    Corpus corpus = import_corpus(corpus_dir);
    CorrelationResult r =
        evaluate_allocation(corpus, allocation, native_metric(metric_name), threads);
    write_correlation_report(fs::path(out) / "evaluation.tsv", {r});
    std::cout << "tau=" << tsv::format_double(r.tau) << "\n";
  }
  write_manifest(out, "allocate",
                 {{"problem", problem_file},
                  {"corpus", corpus_dir},
                  {"budget", problem.budget},
                  {"lambda", problem.lambda},
                  {"temperature", problem.temperature},
                  {"patience", problem.patience},
                  {"seed", problem.seed},
                  {"metric", metric_name}});
  return kExitOk;
}

int cmd_grid(const std::string& corpus_dir, const std::string& metric_name,
             const std::vector<double>& budgets, const std::vector<double>& lambdas,
             double temperature, int patience, int seeds_per_cell, uint64_t seed, int threads,
             const std::string& out) {
  Corpus corpus = import_corpus(corpus_dir);
  auto grid = grid_experiment(corpus, native_metric(metric_name), budgets, lambdas,
                              default_vendor_levels(), temperature, patience, seeds_per_cell, seed,
                              threads);
  fs::create_directories(out);
  export_grid(grid, fs::path(out) / "heatmap.tsv");
  write_manifest(out, "grid",
                 {{"corpus", corpus_dir},
                  {"metric", metric_name},
                  {"budgets", budgets},
                  {"lambdas", lambdas},
                  {"temperature", temperature},
                  {"patience", patience},
                  {"seeds_per_cell", seeds_per_cell},
                  {"seed", seed},
                  {"threads", threads}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reference quality/quantity analysis for MT metric evaluation"};
  app.require_subcommand(1);

  // import
  auto* import_cmd = app.add_subcommand("import", "Import a corpus and print its counts");
  std::string import_from, import_format = "tsv", import_out;
  import_cmd->add_option("--from", import_from, "corpus directory or file")->required();
  import_cmd->add_option("--format", import_format, "tsv or ort-json");
  import_cmd->add_option("--out", import_out, "write the canonical corpus here");

  // shared option storage
  std::string corpus_dir, out_dir, metric, selector, tie_policy = "discordant";
  std::vector<std::string> metric_names{"BLEU", "chrF", "TER"};
  std::vector<std::string> selectors;
  std::vector<std::string> score_files;
  std::string scores_name, scores_orientation;
  int threads = 1;
  uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_out = true) {
    cmd->add_option("--corpus", corpus_dir, "canonical corpus directory")->required();
    if (needs_out) cmd->add_option("--out", out_dir, "output directory")->required();
    cmd->add_option("--threads", threads, "worker threads");
  };

  auto* table2_cmd = app.add_subcommand("table2", "Kendall tau per metric and reference level");
  add_common(table2_cmd);
  table2_cmd->add_option("--metrics", metric_names, "native metrics to include");
  table2_cmd->add_option("--scores", score_files, "ingested score files (repeatable)");
  table2_cmd->add_option("--scores-name", scores_name, "metric name override for --scores");
  table2_cmd->add_option("--orientation", scores_orientation, "orientation override for --scores");
  table2_cmd->add_option("--tie-policy", tie_policy, "discordant, exclude or half");

  auto* table3_cmd =
      app.add_subcommand("table3", "Multi-reference aggregation comparison (avg/max)");
  add_common(table3_cmd);
  table3_cmd->add_option("--metrics", metric_names, "native metrics to include");
  table3_cmd->add_option("--selector", selectors, "selectors, one per flag (repeatable)");
  table3_cmd->add_option("--tie-policy", tie_policy, "discordant, exclude or half");

  auto* table5_cmd = app.add_subcommand("table5", "Raw average metric scores per reference");
  bool flip_ter = true;
  add_common(table5_cmd);
  table5_cmd->add_option("--metrics", metric_names, "native metrics to include");
  table5_cmd->add_option("--selector", selectors, "selectors, one per flag (repeatable)");
  table5_cmd->add_flag("--flip,!--no-flip", flip_ter, "flip lower-better metrics");

  auto* pe_cmd = app.add_subcommand("pe-diff", "Tau difference of post-edited references");
  add_common(pe_cmd);
  pe_cmd->add_option("--metrics", metric_names, "native metrics to include");
  pe_cmd->add_option("--tie-policy", tie_policy, "discordant, exclude or half");

  auto* score_cmd = app.add_subcommand("score", "Export a score table for one metric/selector");
  add_common(score_cmd);
  score_cmd->add_option("--metric", metric, "BLEU, chrF or TER")->required();
  score_cmd->add_option("--selector", selector, "reference selector")->required();

  auto* curve_cmd = app.add_subcommand("curve", "Tau as a function of sampled reference count");
  std::string pool = "R{x,x^PE}";
  int x_min = 1, x_max = 7, reps = 10;
  add_common(curve_cmd);
  curve_cmd->add_option("--metric", metric, "BLEU, chrF or TER")->required();
  curve_cmd->add_option("--pool", pool, "pool selector");
  curve_cmd->add_option("--x-min", x_min, "smallest reference count");
  curve_cmd->add_option("--x-max", x_max, "largest reference count");
  curve_cmd->add_option("--reps", reps, "repetitions per x");
  curve_cmd->add_option("--seed", seed, "rng seed");

  auto* mix_cmd = app.add_subcommand("mix", "Tau under mixed single-reference sources");
  std::string level_a = "R1", level_b = "R3";
  std::vector<double> fractions{0.0, 0.25, 0.5, 0.75, 1.0};
  add_common(mix_cmd);
  mix_cmd->add_option("--metric", metric, "BLEU, chrF or TER")->required();
  mix_cmd->add_option("--level-a", level_a, "base level");
  mix_cmd->add_option("--level-b", level_b, "mixed-in level");
  mix_cmd->add_option("--fractions", fractions, "fractions of segments on level B")
      ->delimiter(',');
  mix_cmd->add_option("--seed", seed, "rng seed");

  auto* alloc_cmd = app.add_subcommand("allocate", "Run the budget allocator once");
  std::string problem_file;
  double budget = 0.0, lambda = 0.5, temperature = 0.5;
  int patience = 1000;
  alloc_cmd->add_option("--problem", problem_file, "problem JSON file");
  alloc_cmd->add_option("--corpus", corpus_dir, "corpus directory (segments + evaluation)");
  alloc_cmd->add_option("--budget", budget, "budget");
  alloc_cmd->add_option("--lambda", lambda, "promote probability")->check(CLI::Range(0.0, 1.0));
  alloc_cmd->add_option("--temperature", temperature, "sampling temperature")
      ->check(CLI::PositiveNumber);
  alloc_cmd->add_option("--patience", patience, "rejected attempts tolerated");
  alloc_cmd->add_option("--seed", seed, "rng seed");
  alloc_cmd->add_option("--metric", metric, "evaluate the allocation with this metric");
  alloc_cmd->add_option("--threads", threads, "worker threads");
  alloc_cmd->add_option("--out", out_dir, "output directory")->required();

  auto* grid_cmd = app.add_subcommand("grid", "Budget x lambda heatmap of the allocator");
  std::vector<double> budgets, lambdas;
  int seeds_per_cell = 3;
  add_common(grid_cmd);
  grid_cmd->add_option("--metric", metric, "BLEU, chrF or TER")->required();
  grid_cmd->add_option("--budgets", budgets, "budget columns")->delimiter(',')->required();
  grid_cmd->add_option("--lambdas", lambdas, "lambda rows")->delimiter(',')->required();
  grid_cmd->add_option("--temperature", temperature, "sampling temperature");
  grid_cmd->add_option("--patience", patience, "rejected attempts tolerated");
  grid_cmd->add_option("--seeds-per-cell", seeds_per_cell, "allocations per cell");
  grid_cmd->add_option("--seed", seed, "rng seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (import_cmd->parsed()) return cmd_import(import_from, import_format, import_out);
    if (table2_cmd->parsed()) {
      return cmd_table2(corpus_dir, metric_names, score_files, scores_name, scores_orientation,
                        tie_policy, threads, out_dir);
    }
    if (table3_cmd->parsed()) {
      return cmd_table3(corpus_dir, metric_names, selectors, tie_policy, threads, out_dir);
    }
    if (table5_cmd->parsed()) {
      return cmd_table5(corpus_dir, metric_names, selectors, flip_ter, threads, out_dir);
    }
    if (pe_cmd->parsed()) {
      return cmd_pe_diff(corpus_dir, metric_names, tie_policy, threads, out_dir);
    }
    if (score_cmd->parsed()) return cmd_score(corpus_dir, metric, selector, threads, out_dir);
    if (curve_cmd->parsed()) {
      return cmd_curve(corpus_dir, metric, pool, x_min, x_max, reps, seed, threads, out_dir);
    }
    if (mix_cmd->parsed()) {
      return cmd_mix(corpus_dir, metric, level_a, level_b, fractions, seed, threads, out_dir);
    }
    if (alloc_cmd->parsed()) {
      return cmd_allocate(problem_file, corpus_dir, budget, lambda, temperature, patience, seed,
                          metric, threads, out_dir);
    }
    if (grid_cmd->parsed()) {
      return cmd_grid(corpus_dir, metric, budgets, lambdas, temperature, patience, seeds_per_cell,
                      seed, threads, out_dir);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
