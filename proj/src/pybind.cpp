#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "refeval/allocator.hpp"
#include "refeval/corpus.hpp"
#include "refeval/error.hpp"
#include "refeval/metaeval.hpp"
#include "refeval/metrics.hpp"

namespace py = pybind11;
using namespace refeval;

namespace {

MetricId resolve_metric(const std::string& name) { return native_metric(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reference quality/quantity analysis for MT metric evaluation";

  py::register_exception<DataError>(m, "DataError");
  py::register_exception<UsageError>(m, "UsageError");

  py::class_<RefKey>(m, "RefKey")
      .def(py::init<std::string, std::string, std::string>(), py::arg("level"),
           py::arg("proficiency") = "", py::arg("editor") = "")
      .def_readonly("level", &RefKey::level)
      .def_readonly("proficiency", &RefKey::proficiency)
      .def_readonly("editor", &RefKey::editor)
      .def("is_post_edit", &RefKey::is_post_edit)
      .def("__str__", &RefKey::str)
      .def("__repr__", [](const RefKey& k) { return "RefKey('" + k.str() + "')"; })
      .def_static("parse", &RefKey::parse);

  py::class_<CorpusCounts>(m, "CorpusCounts")
      .def_readonly("segments", &CorpusCounts::segments)
      .def_readonly("documents", &CorpusCounts::documents)
      .def_readonly("systems", &CorpusCounts::systems)
      .def_readonly("references", &CorpusCounts::references)
      .def_readonly("post_edits", &CorpusCounts::post_edits)
      .def("__repr__", [](const CorpusCounts& c) {
        return "CorpusCounts(segments=" + std::to_string(c.segments) +
               ", documents=" + std::to_string(c.documents) +
               ", systems=" + std::to_string(c.systems) +
               ", references=" + std::to_string(c.references) +
               ", post_edits=" + std::to_string(c.post_edits) + ")";
      });

  py::class_<Corpus>(m, "Corpus")
      .def_readonly("documents", &Corpus::documents)
      .def_readonly("systems", &Corpus::systems)
      .def_property_readonly("segment_ids",
                             [](const Corpus& c) {
                               std::vector<std::string> ids;
                               for (const auto& s : c.segments) ids.push_back(s.id);
                               return ids;
                             })
      .def("counts", &Corpus::counts)
      .def("human_score", &Corpus::human_score)
      .def("validate", &Corpus::validate);

  m.def("import_corpus",
        [](const std::filesystem::path& path, const std::string& format) {
          return import_corpus(path, format);
        },
        py::arg("path"), py::arg("format") = "tsv");
  m.def("export_corpus", &export_corpus, py::arg("corpus"), py::arg("dir"));

  m.def("select_references",
        [](const Corpus& corpus, const std::string& selector) {
          std::map<std::string, std::vector<std::string>> out;
          for (const auto& [seg, keys] : select_references(corpus, selector)) {
            std::vector<std::string> strs;
            for (const auto& k : keys) strs.push_back(k.str());
            out[seg] = std::move(strs);
          }
          return out;
        },
        py::arg("corpus"), py::arg("selector"));

  // sentence metrics
  m.def("bleu_sentence",
        [](const std::string& h, const std::string& r) { return bleu_sentence(h, r).value; },
        py::arg("hypothesis"), py::arg("reference"));
  m.def("chrf_sentence",
        [](const std::string& h, const std::string& r) { return chrf_sentence(h, r).value; },
        py::arg("hypothesis"), py::arg("reference"));
  m.def("ter_sentence", &ter_sentence, py::arg("hypothesis"), py::arg("reference"));

  py::class_<ScoreTable>(m, "ScoreTable")
      .def_property_readonly("metric_name",
                             [](const ScoreTable& t) { return t.metric().name; })
      .def_property_readonly("orientation",
                             [](const ScoreTable& t) {
                               return std::string(to_string(t.metric().orientation));
                             })
      .def_property_readonly("external", &ScoreTable::external)
      .def("__len__", [](const ScoreTable& t) { return t.entries().size(); })
      .def("entries",
           [](const ScoreTable& t) {
             std::vector<std::tuple<std::string, std::string, std::string, double>> out;
             for (const auto& e : t.entries()) {
               out.emplace_back(e.system, e.segment, e.ref_key, e.value);
             }
             return out;
           })
      .def("warnings",
           [](const ScoreTable& t) {
             std::vector<std::tuple<std::string, std::string, std::string, std::string>> out;
             for (const auto& w : t.warnings()) {
               out.emplace_back(w.system, w.segment, w.ref_key, w.message);
             }
             return out;
           })
      .def("at", &ScoreTable::at, py::arg("system"), py::arg("segment"), py::arg("ref_key"))
      .def("export_tsv", &ScoreTable::export_tsv, py::arg("path"));

  m.def("score_all",
        [](const Corpus& corpus, const std::string& metric, const std::string& selector,
           int threads) {
          return score_all(corpus, resolve_metric(metric), select_references(corpus, selector),
                           threads);
        },
        py::arg("corpus"), py::arg("metric"), py::arg("selector"), py::arg("threads") = 1);

  m.def("ingest_scores",
        [](const Corpus& corpus, const std::filesystem::path& path, const std::string& name,
           const std::string& orientation) {
          return ingest_scores(corpus, path, name, orientation_from_string(orientation));
        },
        py::arg("corpus"), py::arg("path"), py::arg("name"), py::arg("orientation") = "higher");

  py::class_<DarrPair>(m, "DarrPair")
      .def_readonly("segment", &DarrPair::segment)
      .def_readonly("better", &DarrPair::better)
      .def_readonly("worse", &DarrPair::worse)
      .def("__repr__", [](const DarrPair& p) {
        return "DarrPair(" + p.segment + ": " + p.better + " > " + p.worse + ")";
      });

  m.def("build_darr_pairs", &build_darr_pairs, py::arg("corpus"), py::arg("threshold") = 25.0);

  py::class_<CorrelationResult>(m, "CorrelationResult")
      .def_property_readonly("metric_name",
                             [](const CorrelationResult& r) { return r.metric.name; })
      .def_readonly("selector", &CorrelationResult::selector)
      .def_property_readonly("aggregation",
                             [](const CorrelationResult& r) {
                               return std::string(to_string(r.aggregation));
                             })
      .def_readonly("tau", &CorrelationResult::tau)
      .def_readonly("pairs", &CorrelationResult::pairs)
      .def_readonly("concordant", &CorrelationResult::concordant)
      .def_readonly("discordant", &CorrelationResult::discordant)
      .def_readonly("ties", &CorrelationResult::ties)
      .def("__repr__", [](const CorrelationResult& r) {
        return "CorrelationResult(" + r.metric.name + ", " + r.selector +
               ", tau=" + std::to_string(r.tau) + ")";
      });

  m.def("correlate",
        [](const Corpus& corpus, const std::string& metric, const std::string& selector,
           const std::string& aggregation, const std::string& tie_policy, int threads) {
          return correlate(corpus, resolve_metric(metric), selector,
                           aggregation_from_string(aggregation),
                           tie_policy_from_string(tie_policy), threads);
        },
        py::arg("corpus"), py::arg("metric"), py::arg("selector"),
        py::arg("aggregation") = "single", py::arg("tie_policy") = "discordant",
        py::arg("threads") = 1);

  m.def("correlate_table",
        [](const Corpus& corpus, const ScoreTable& table, const std::string& aggregation,
           const std::string& tie_policy) {
          return correlate(corpus, table, aggregation_from_string(aggregation),
                           tie_policy_from_string(tie_policy));
        },
        py::arg("corpus"), py::arg("table"), py::arg("aggregation") = "single",
        py::arg("tie_policy") = "discordant");

  m.def("mix_references", &mix_references, py::arg("corpus"), py::arg("metric"),
        py::arg("level_a"), py::arg("level_b"), py::arg("fraction"), py::arg("seed"),
        py::arg("threads") = 1);

  py::class_<SamplingCurvePoint>(m, "SamplingCurvePoint")
      .def_readonly("x", &SamplingCurvePoint::x)
      .def_readonly("mean_tau", &SamplingCurvePoint::mean_tau)
      .def_readonly("ci99_halfwidth", &SamplingCurvePoint::ci99_halfwidth)
      .def_readonly("n", &SamplingCurvePoint::n);

  m.def("sampling_curve",
        [](const Corpus& corpus, const std::string& metric, const std::string& pool, int x_min,
           int x_max, int repetitions, uint64_t seed, int threads) {
          return sampling_curve(corpus, resolve_metric(metric), pool, x_min, x_max, repetitions,
                                seed, threads);
        },
        py::arg("corpus"), py::arg("metric"), py::arg("pool"), py::arg("x_min"), py::arg("x_max"),
        py::arg("repetitions") = 10, py::arg("seed") = 0, py::arg("threads") = 1);

  // allocator
  py::class_<VendorLevel>(m, "VendorLevel")
      .def(py::init<std::string, double, double>(), py::arg("id"), py::arg("cost"),
           py::arg("utility"))
      .def_readwrite("id", &VendorLevel::id)
      .def_readwrite("cost", &VendorLevel::cost)
      .def_readwrite("utility", &VendorLevel::utility);

  py::class_<AllocationProblem>(m, "AllocationProblem")
      .def(py::init<>())
      .def_readwrite("segments", &AllocationProblem::segments)
      .def_readwrite("levels", &AllocationProblem::levels)
      .def_readwrite("budget", &AllocationProblem::budget)
      .def_readwrite("lambda_", &AllocationProblem::lambda)
      .def_readwrite("temperature", &AllocationProblem::temperature)
      .def_readwrite("patience", &AllocationProblem::patience)
      .def_readwrite("seed", &AllocationProblem::seed)
      .def("validate", &AllocationProblem::validate)
      .def("to_json", &AllocationProblem::to_json)
      .def_static("from_json", &AllocationProblem::from_json);

  py::class_<Allocation>(m, "Allocation")
      .def_readonly("assignment", &Allocation::assignment)
      .def("total_purchases", &Allocation::total_purchases)
      .def("total_cost", &Allocation::total_cost)
      .def("total_utility", &Allocation::total_utility)
      .def("check_feasible", &Allocation::check_feasible);

  py::class_<Transaction>(m, "Transaction")
      .def_property_readonly("kind",
                             [](const Transaction& t) {
                               return t.kind == Transaction::Kind::Add ? "add" : "promote";
                             })
      .def_readonly("segment", &Transaction::segment)
      .def_readonly("level_from", &Transaction::level_from)
      .def_readonly("level_to", &Transaction::level_to)
      .def_readonly("cost_after", &Transaction::cost_after)
      .def_readonly("utility_after", &Transaction::utility_after);

  py::class_<AllocationTrace>(m, "AllocationTrace")
      .def_readonly("transactions", &AllocationTrace::transactions)
      .def_readonly("rejected", &AllocationTrace::rejected)
      .def_readonly("final_cost", &AllocationTrace::final_cost)
      .def_readonly("final_utility", &AllocationTrace::final_utility);

  m.def("allocate", &allocate, py::arg("problem"));
  m.def("replay_trace", &replay_trace, py::arg("problem"), py::arg("trace"));

  py::class_<BruteForceResult>(m, "BruteForceResult")
      .def_readonly("utility", &BruteForceResult::utility)
      .def_readonly("best", &BruteForceResult::best);

  m.def("brute_force_allocate", &brute_force_allocate, py::arg("segments"), py::arg("levels"),
        py::arg("budget"));

  m.def("evaluate_allocation",
        [](const Corpus& corpus, const Allocation& allocation, const std::string& metric,
           int threads) {
          return evaluate_allocation(corpus, allocation, resolve_metric(metric), threads);
        },
        py::arg("corpus"), py::arg("allocation"), py::arg("metric"), py::arg("threads") = 1);

  py::class_<GridCell>(m, "GridCell")
      .def_readonly("budget", &GridCell::budget)
      .def_readonly("lambda_", &GridCell::lambda)
      .def_readonly("mean_tau", &GridCell::mean_tau)
      .def_readonly("mean_refs_per_segment", &GridCell::mean_refs_per_segment)
      .def_readonly("argmax", &GridCell::argmax);

  m.def("grid_experiment",
        [](const Corpus& corpus, const std::string& metric, const std::vector<double>& budgets,
           const std::vector<double>& lambdas, const std::vector<VendorLevel>& levels,
           double temperature, int patience, int seeds_per_cell, uint64_t seed, int threads) {
          return grid_experiment(corpus, resolve_metric(metric), budgets, lambdas, levels,
                                 temperature, patience, seeds_per_cell, seed, threads);
        },
        py::arg("corpus"), py::arg("metric"), py::arg("budgets"), py::arg("lambdas"),
        py::arg("levels"), py::arg("temperature") = 0.5, py::arg("patience") = 1000,
        py::arg("seeds_per_cell") = 3, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("default_vendor_levels", &default_vendor_levels);

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
