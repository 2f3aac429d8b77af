#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "refeval/metrics.hpp"
#include "refeval/tokenize.hpp"

namespace refeval {

namespace {

constexpr int kCharOrder = 6;
constexpr double kBeta = 2.0;

using Gram = std::vector<uint32_t>;

std::map<Gram, int> count_char_ngrams(const std::vector<uint32_t>& chars, int order) {
  std::map<Gram, int> counts;
  if (static_cast<int>(chars.size()) < order) return counts;
  for (size_t i = 0; i + order <= chars.size(); ++i) {
    Gram gram(chars.begin() + i, chars.begin() + i + order);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace

SentenceScore chrf_sentence(std::string_view hypothesis, std::string_view reference) {
  auto hyp = chrf_codepoints(hypothesis);
  auto ref = chrf_codepoints(reference);
  if (hyp.empty() || ref.empty()) return {0.0, true};

  const double factor = kBeta * kBeta;
  double score = 0.0;
  int effective_order = 0;
  for (int n = 1; n <= kCharOrder; ++n) {
    auto hyp_grams = count_char_ngrams(hyp, n);
    auto ref_grams = count_char_ngrams(ref, n);
    int n_hyp = 0;
    int n_match = 0;
    for (const auto& [gram, count] : hyp_grams) {
      n_hyp += count;
      auto it = ref_grams.find(gram);
      if (it != ref_grams.end()) n_match += std::min(count, it->second);
    }
    int n_ref = 0;
    for (const auto& [gram, count] : ref_grams) n_ref += count;

    if (n_hyp > 0 && n_ref > 0) {
      double prec = static_cast<double>(n_match) / n_hyp;
      double rec = static_cast<double>(n_match) / n_ref;
      double denom = factor * prec + rec;
      if (denom > 0.0) score += (1.0 + factor) * prec * rec / denom;
      ++effective_order;
    }
  }

  if (effective_order == 0) return {0.0, false};
  return {100.0 * score / effective_order, false};
}

}  // namespace refeval
