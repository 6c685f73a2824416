#pragma once

#include <cstddef>

namespace sparsec {

// Runs body(i) for i in [0, count), over OpenMP threads when parallel is
// true and as a plain loop otherwise. Bodies must only write state owned by
// their own index and must not throw; under those rules the serial and
// parallel paths produce identical bytes, which the tests assert.
template <typename Body>
void parallel_for(std::size_t count, bool parallel, const Body& body) {
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
      body(static_cast<std::size_t>(i));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
  }
}

}  // namespace sparsec
