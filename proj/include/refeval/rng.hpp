#ifndef REFEVAL_RNG_HPP
#define REFEVAL_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace refeval {

// Deterministic random source used by every seeded operation. The generator
// (splitmix64) and all derived draws are fully specified here, so identical
// seeds give identical results on any platform or thread schedule.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // New generator with a seed mixed from this seed and a tag path, e.g.
  // Rng(seed).derive({budget_index, lambda_index, repetition}). Streams for
  // different paths are independent.
  Rng derive(std::initializer_list<uint64_t> path) const;

  uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double next_double();

  // Uniform integer in [0, n), unbiased (rejection sampling). n > 0.
  uint64_t below(uint64_t n);

  // Index drawn with probability weights[i] / sum(weights). Weights must be
  // nonnegative with a positive sum.
  size_t discrete(std::span<const double> weights);

  // Fisher-Yates; same permutation for the same seed everywhere.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), in draw order.
  std::vector<size_t> sample_without_replacement(size_t n, size_t k);

 private:
  uint64_t state_;
};

}  // namespace refeval

#endif  // REFEVAL_RNG_HPP
