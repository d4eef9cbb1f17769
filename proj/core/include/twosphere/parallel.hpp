#pragma once

#include <cstddef>
#include <functional>

namespace twosphere {

// Process-wide worker count used by assembly loops. Values < 1 mean 1.
void set_thread_count(int n);
int thread_count();

// Runs body(i) for i in [0, n). Each index is handled by exactly one worker
// and the body must only write state owned by i, so results never depend on
// the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace twosphere
