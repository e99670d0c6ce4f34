#pragma once

#include <cstddef>
#include <functional>

namespace elpath {

/// Runs fn(0..n-1) over at most `threads` workers in static contiguous
/// chunks. fn must only write caller-owned state indexed by i, which makes
/// the result identical to the sequential loop regardless of thread count.
/// The lowest-indexed failing chunk's exception is rethrown after all
/// workers join.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace elpath
