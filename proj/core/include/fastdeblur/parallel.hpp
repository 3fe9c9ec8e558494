#ifndef FASTDEBLUR_PARALLEL_HPP
#define FASTDEBLUR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace fastdeblur {

/// Number of worker threads used for batched work (2D transform batches,
/// GCV grid evaluation). Defaults to the hardware concurrency and can be
/// capped with the FASTDEBLUR_THREADS environment variable; a value of 1
/// forces sequential execution.
int thread_budget();

/// Runs fn(i) for i in [0, count). Each index writes to disjoint state, so
/// the result is identical to a sequential loop regardless of scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace fastdeblur

#endif // FASTDEBLUR_PARALLEL_HPP
