#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "refeval/metrics.hpp"
#include "refeval/tokenize.hpp"

namespace refeval {

namespace {

constexpr int kMaxOrder = 4;

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int order) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < order) return counts;
  for (size_t i = 0; i + order <= tokens.size(); ++i) {
    std::vector<std::string> gram(tokens.begin() + i, tokens.begin() + i + order);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace

SentenceScore bleu_sentence(std::string_view hypothesis, std::string_view reference) {
  auto hyp = tokenize_13a(hypothesis);
  auto ref = tokenize_13a(reference);
  if (hyp.empty() || ref.empty()) return {0.0, true};

  const int hyp_len = static_cast<int>(hyp.size());
  const int ref_len = static_cast<int>(ref.size());

  std::array<int, kMaxOrder> correct{};
  std::array<int, kMaxOrder> total{};
  for (int n = 1; n <= kMaxOrder; ++n) {
    total[n - 1] = std::max(hyp_len - n + 1, 0);
    if (total[n - 1] == 0) continue;
    auto hyp_grams = count_ngrams(hyp, n);
    auto ref_grams = count_ngrams(ref, n);
    int matched = 0;
    for (const auto& [gram, count] : hyp_grams) {
      auto it = ref_grams.find(gram);
      if (it != ref_grams.end()) matched += std::min(count, it->second);
    }
    correct[n - 1] = matched;
  }

  double bp = 1.0;
  if (hyp_len < ref_len) {
    bp = std::exp(1.0 - static_cast<double>(ref_len) / hyp_len);
  }

  // No n-gram of any order matched: score is 0 outright, smoothing applies
  // only to the higher orders of a partially matching hypothesis.
  bool any_correct = false;
  for (int c : correct) any_correct = any_correct || c > 0;
  if (!any_correct) return {0.0, false};

  std::array<double, kMaxOrder> precision{};
  double smooth = 1.0;
  int effective_order = kMaxOrder;
  for (int n = 1; n <= kMaxOrder; ++n) {
    if (total[n - 1] == 0) break;
    effective_order = n;
    if (correct[n - 1] == 0) {
      smooth *= 2.0;
      precision[n - 1] = 100.0 / (smooth * total[n - 1]);
    } else {
      precision[n - 1] = 100.0 * correct[n - 1] / total[n - 1];
    }
  }

  double log_sum = 0.0;
  for (int n = 0; n < effective_order; ++n) {
    if (precision[n] > 0.0) log_sum += std::log(precision[n]);
  }
  return {bp * std::exp(log_sum / effective_order), false};
}

}  // namespace refeval
