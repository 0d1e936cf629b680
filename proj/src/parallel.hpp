#ifndef CIDESIGN_PARALLEL_HPP
#define CIDESIGN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace cid {

// Worker count: hardware concurrency, capped by the CI_DESIGNER_THREADS
// environment variable when set.
int worker_count();

// Runs fn(i) for i in [0, n) on a small thread pool.  fn must be safe to call
// concurrently for distinct i.  Exceptions are captured and the first one is
// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace cid

#endif
