#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#include <omp.h>

namespace amrsl {

// Sets the worker count used by the parallel kernels. 0 keeps the OpenMP
// default.
inline void set_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

// Runs fn(i) for i in [0, n) across OpenMP threads. Exceptions do not cross
// the parallel region; the one from the lowest index is rethrown afterwards.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace amrsl
