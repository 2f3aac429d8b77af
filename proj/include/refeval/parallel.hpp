#ifndef REFEVAL_PARALLEL_HPP
#define REFEVAL_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace refeval {

// Runs fn(i) for i in [0, count) on up to `threads` workers, static block
// partition. Results must be written to disjoint slots so the schedule
// cannot change the outcome. threads <= 1 runs inline. Exceptions from
// workers are rethrown on the calling thread.
void parallel_for(size_t count, int threads, const std::function<void(size_t)>& fn);

}  // namespace refeval

#endif  // REFEVAL_PARALLEL_HPP
