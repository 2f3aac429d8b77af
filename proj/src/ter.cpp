#include <algorithm>
#include <cstdlib>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "refeval/error.hpp"
#include "refeval/metrics.hpp"
#include "refeval/tokenize.hpp"

namespace refeval {

namespace {

// Edit operations, ranked for deterministic tie-breaking in the DP:
// match < deletion < insertion < substitution.
enum Op : char { kNop = ' ', kDel = 'd', kIns = 'i', kSub = 's' };

int op_rank(char op) {
  switch (op) {
    case kNop: return 0;
    case kDel: return 1;
    case kIns: return 2;
    default: return 3;
  }
}

struct EditTrace {
  int distance = 0;
  std::string ops;  // left-to-right recipe over (hyp, ref)
};

// Exact Levenshtein with unit costs and a recorded traceback.
EditTrace levenshtein_trace(const std::vector<int>& hyp, const std::vector<int>& ref) {
  const size_t h = hyp.size();
  const size_t r = ref.size();
  std::vector<int> cost((h + 1) * (r + 1));
  std::vector<char> op((h + 1) * (r + 1));
  auto at = [r](size_t i, size_t j) { return i * (r + 1) + j; };

  cost[at(0, 0)] = 0;
  op[at(0, 0)] = kNop;
  for (size_t i = 1; i <= h; ++i) {
    cost[at(i, 0)] = static_cast<int>(i);
    op[at(i, 0)] = kDel;
  }
  for (size_t j = 1; j <= r; ++j) {
    cost[at(0, j)] = static_cast<int>(j);
    op[at(0, j)] = kIns;
  }
  for (size_t i = 1; i <= h; ++i) {
    for (size_t j = 1; j <= r; ++j) {
      bool same = hyp[i - 1] == ref[j - 1];
      int c_diag = cost[at(i - 1, j - 1)] + (same ? 0 : 1);
      char o_diag = same ? kNop : kSub;
      int c_del = cost[at(i - 1, j)] + 1;
      int c_ins = cost[at(i, j - 1)] + 1;

      int best_cost = c_diag;
      char best_op = o_diag;
      if (c_del < best_cost || (c_del == best_cost && op_rank(kDel) < op_rank(best_op))) {
        best_cost = c_del;
        best_op = kDel;
      }
      if (c_ins < best_cost || (c_ins == best_cost && op_rank(kIns) < op_rank(best_op))) {
        best_cost = c_ins;
        best_op = kIns;
      }
      cost[at(i, j)] = best_cost;
      op[at(i, j)] = best_op;
    }
  }

  EditTrace trace;
  trace.distance = cost[at(h, r)];
  size_t i = h;
  size_t j = r;
  std::string ops;
  while (i > 0 || j > 0) {
    char o = op[at(i, j)];
    ops.push_back(o);
    if (o == kNop || o == kSub) {
      --i;
      --j;
    } else if (o == kIns) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(ops.begin(), ops.end());
  trace.ops = std::move(ops);
  return trace;
}

int levenshtein_distance(const std::vector<int>& hyp, const std::vector<int>& ref) {
  // Two-row variant, distance only.
  const size_t r = ref.size();
  std::vector<int> prev(r + 1);
  std::vector<int> cur(r + 1);
  for (size_t j = 0; j <= r; ++j) prev[j] = static_cast<int>(j);
  for (size_t i = 1; i <= hyp.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (size_t j = 1; j <= r; ++j) {
      int c = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      c = std::min(c, prev[j] + 1);
      c = std::min(c, cur[j - 1] + 1);
      cur[j] = c;
    }
    std::swap(prev, cur);
  }
  return prev[r];
}

struct TraceAlignment {
  std::vector<int> align;    // ref position -> hyp position at or before it
  std::vector<int> ref_err;  // 1 where the ref word is part of an edit
  std::vector<int> hyp_err;  // 1 where the hyp word is part of an edit
};

TraceAlignment trace_to_alignment(const std::string& ops) {
  TraceAlignment a;
  int pos_hyp = -1;
  int pos_ref = -1;
  for (char o : ops) {
    switch (o) {
      case kNop:
        ++pos_hyp;
        ++pos_ref;
        a.align.push_back(pos_hyp);
        a.hyp_err.push_back(0);
        a.ref_err.push_back(0);
        break;
      case kSub:
        ++pos_hyp;
        ++pos_ref;
        a.align.push_back(pos_hyp);
        a.hyp_err.push_back(1);
        a.ref_err.push_back(1);
        break;
      case kIns:
        ++pos_ref;
        a.align.push_back(pos_hyp);
        a.ref_err.push_back(1);
        break;
      default:  // kDel
        ++pos_hyp;
        a.hyp_err.push_back(1);
        break;
    }
  }
  return a;
}

// Removes words [start, start+length) and reinserts them right after
// position `target` (indices in the original sequence; target may be -1 for
// the front). Targets inside the block are rejected by the caller.
std::vector<int> perform_shift(const std::vector<int>& words, int start, int length, int target) {
  std::vector<int> out;
  out.reserve(words.size());
  const int n = static_cast<int>(words.size());
  if (target < start) {
    for (int k = 0; k <= target; ++k) out.push_back(words[k]);
    for (int k = start; k < start + length; ++k) out.push_back(words[k]);
    for (int k = target + 1; k < start; ++k) out.push_back(words[k]);
    for (int k = start + length; k < n; ++k) out.push_back(words[k]);
  } else {
    for (int k = 0; k < start; ++k) out.push_back(words[k]);
    for (int k = start + length; k <= target; ++k) out.push_back(words[k]);
    for (int k = start; k < start + length; ++k) out.push_back(words[k]);
    for (int k = target + 1; k < n; ++k) out.push_back(words[k]);
  }
  return out;
}

struct ShiftOutcome {
  int delta = 0;
  std::vector<int> words;
};

// One round of the greedy search: evaluates every admissible block shift and
// returns the one ranked best by (edit gain, block length, earliest source,
// earliest target). `checked` accumulates across rounds and is capped.
ShiftOutcome best_shift(const std::vector<int>& words_h, const std::vector<int>& words_r,
                        int& checked, const TerOptions& opt) {
  EditTrace trace = levenshtein_trace(words_h, words_r);
  TraceAlignment a = trace_to_alignment(trace.ops);
  const int pre_score = trace.distance;
  const int h = static_cast<int>(words_h.size());
  const int r = static_cast<int>(words_r.size());

  bool have_best = false;
  std::tuple<int, int, int, int> best_key;
  std::vector<int> best_words;

  for (int start_h = 0; start_h < h; ++start_h) {
    for (int start_r = 0; start_r < r; ++start_r) {
      if (std::abs(start_h - start_r) > opt.max_shift_distance) continue;
      int length = 0;
      while (words_h[start_h + length] == words_r[start_r + length] &&
             length < opt.max_shift_size) {
        ++length;

        // The block must be wrong in the hypothesis, wrong at the reference
        // position, and must not be shifted into itself.
        bool admissible = true;
        int hyp_wrong = 0;
        for (int k = start_h; k < start_h + length; ++k) hyp_wrong += a.hyp_err[k];
        if (hyp_wrong == 0) admissible = false;
        int ref_wrong = 0;
        for (int k = start_r; admissible && k < start_r + length; ++k) ref_wrong += a.ref_err[k];
        if (admissible && ref_wrong == 0) admissible = false;
        const int target = a.align[start_r];
        if (admissible && start_h <= target && target < start_h + length) admissible = false;

        if (admissible) {
          auto shifted = perform_shift(words_h, start_h, length, target);
          int score = levenshtein_distance(shifted, words_r);
          std::tuple<int, int, int, int> key{pre_score - score, length, -start_h, -target};
          ++checked;
          if (!have_best || key > best_key) {
            best_key = key;
            best_words = std::move(shifted);
            have_best = true;
          }
          if (checked >= opt.max_shift_candidates) {
            if (!have_best) return {0, words_h};
            return {std::get<0>(best_key), std::move(best_words)};
          }
        }

        if (start_h + length == h || start_r + length == r) break;
      }
    }
  }

  if (!have_best) return {0, words_h};
  return {std::get<0>(best_key), std::move(best_words)};
}

}  // namespace

int ter_edit_count(const std::vector<std::string>& hypothesis,
                   const std::vector<std::string>& reference, const TerOptions& options) {
  if (reference.empty()) throw DataError("TER: empty reference");

  // Intern tokens so the inner loops compare ints.
  std::unordered_map<std::string, int> dict;
  auto intern = [&dict](const std::vector<std::string>& tokens) {
    std::vector<int> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
      auto [it, inserted] = dict.try_emplace(t, static_cast<int>(dict.size()));
      (void)inserted;
      out.push_back(it->second);
    }
    return out;
  };
  std::vector<int> words = intern(hypothesis);
  const std::vector<int> ref = intern(reference);

  int shifts = 0;
  if (options.shifts) {
    int checked = 0;
    while (true) {
      ShiftOutcome outcome = best_shift(words, ref, checked, options);
      if (checked >= options.max_shift_candidates) break;
      if (outcome.delta <= 0) break;
      ++shifts;
      words = std::move(outcome.words);
    }
  }
  return shifts + levenshtein_distance(words, ref);
}

double ter_sentence(std::string_view hypothesis, std::string_view reference) {
  auto hyp = tokenize_tercom(hypothesis);
  auto ref = tokenize_tercom(reference);
  if (ref.empty()) throw DataError("TER: reference is empty after tokenization");
  int edits = ter_edit_count(hyp, ref);
  return 100.0 * edits / static_cast<double>(ref.size());
}

}  // namespace refeval
