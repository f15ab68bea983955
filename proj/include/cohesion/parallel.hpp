#ifndef COHESION_PARALLEL_HPP
#define COHESION_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace cohesion {

/// Number of workers to use when the caller passes 0.
std::size_t default_workers();

/// Runs body(i) for i in [0, count) on up to `workers` threads (0 = default).
/// Results must be written to per-index slots; the call order is unspecified.
/// If any call throws, the exception of the smallest failing index is
/// rethrown after all workers stop.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace cohesion

#endif
