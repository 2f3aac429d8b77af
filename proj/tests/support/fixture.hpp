#ifndef REFEVAL_TESTS_FIXTURE_HPP
#define REFEVAL_TESTS_FIXTURE_HPP

// Deterministic synthetic corpora for tests. Hypotheses are corruptions of a
// per-segment base sentence, with per-system corruption rates; DA scores
// track the corruption so metric/human correlations are positive and stable.

#include <string>
#include <vector>

#include "refeval/corpus.hpp"
#include "refeval/rng.hpp"

namespace refeval::testing {

struct FixtureSpec {
  size_t segments = 8;
  size_t documents = 2;
  size_t systems = 4;
  std::vector<std::string> levels = {"R1", "R2", "R3", "R4"};
  // (proficiency, editor) pairs; empty = no post-edits
  std::vector<std::pair<std::string, std::string>> editors = {
      {"layman", "a01"}, {"layman", "a02"}, {"student", "a03"}, {"professional", "a04"}};
  uint64_t seed = 7;
};

inline std::vector<std::string> fixture_vocab() {
  return {"the",  "cat",   "sat",   "on",    "mat",   "dog",  "ran",  "fast", "blue",
          "sky",  "over",  "hill",  "green", "tree",  "bird", "sang", "loud", "song",
          "řeka", "teče",  "mezi",  "poli",  "velmi", "tiše", "dnes", "ráno", "slunce",
          "small", "stone", "under", "water", "moon"};
}

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Replaces each token with probability `rate` by a random vocab token.
inline std::vector<std::string> corrupt(const std::vector<std::string>& base, double rate,
                                        Rng& rng, const std::vector<std::string>& vocab) {
  std::vector<std::string> out = base;
  for (auto& tok : out) {
    if (rng.next_double() < rate) tok = vocab[rng.below(vocab.size())];
  }
  return out;
}

inline Corpus make_fixture_corpus(const FixtureSpec& spec = {}) {
  Corpus corpus;
  auto vocab = fixture_vocab();
  Rng rng(spec.seed);

  for (size_t d = 0; d < spec.documents; ++d) {
    corpus.documents.push_back("doc" + std::to_string(d));
  }
  for (size_t s = 0; s < spec.systems; ++s) {
    corpus.systems.push_back("sys" + std::to_string(s));
  }

  for (size_t i = 0; i < spec.segments; ++i) {
    Segment seg;
    char id[16];
    std::snprintf(id, sizeof(id), "seg%03zu", i);
    seg.id = id;
    seg.doc_id = corpus.documents[i % spec.documents];

    std::vector<std::string> base;
    size_t len = 6 + rng.below(6);
    for (size_t k = 0; k < len; ++k) base.push_back(vocab[rng.below(vocab.size())]);
    seg.source = "src: " + join_tokens(base);

    // references: later levels perturb less
    for (size_t l = 0; l < spec.levels.size(); ++l) {
      double rate = 0.25 - 0.06 * static_cast<double>(l);
      auto ref_tokens = corrupt(base, rate, rng, vocab);
      seg.references.push_back(Reference{RefKey{spec.levels[l], "", ""}, join_tokens(ref_tokens)});
      for (const auto& [prof, editor] : spec.editors) {
        auto pe_tokens = corrupt(ref_tokens, 0.05, rng, vocab);
        seg.references.push_back(
            Reference{RefKey{spec.levels[l], prof, editor}, join_tokens(pe_tokens)});
      }
    }
    std::sort(seg.references.begin(), seg.references.end(),
              [](const Reference& a, const Reference& b) { return a.key < b.key; });

    // systems: quality spread; DA tracks the corruption rate with mild noise
    for (size_t s = 0; s < spec.systems; ++s) {
      double rate = 0.05 + 0.5 * static_cast<double>(s) / std::max<size_t>(1, spec.systems - 1);
      auto hyp_tokens = corrupt(base, rate, rng, vocab);
      seg.hypotheses[corpus.systems[s]] = join_tokens(hyp_tokens);
      double da = 95.0 - 140.0 * rate + 10.0 * rng.next_double();
      if (da < 0.0) da = 0.0;
      corpus.human_scores[{corpus.systems[s], seg.id}] = da;
    }
    corpus.segments.push_back(std::move(seg));
  }

  std::sort(corpus.segments.begin(), corpus.segments.end(),
            [](const Segment& a, const Segment& b) { return a.id < b.id; });
  corpus.validate();
  return corpus;
}

// Tiny two-segment corpus with hand-written content, for exact-count checks.
inline Corpus make_tiny_corpus() {
  FixtureSpec spec;
  spec.segments = 2;
  spec.documents = 1;
  spec.systems = 2;
  spec.levels = {"R1"};
  spec.editors.clear();
  return make_fixture_corpus(spec);
}

}  // namespace refeval::testing

#endif  // REFEVAL_TESTS_FIXTURE_HPP
