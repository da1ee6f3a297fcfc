#pragma once

#include <atomic>
#include <exception>
#include <mutex>

#include "conelift/common.hpp"
#include "conelift/kernels.hpp"

namespace conelift {
namespace detail {

/// Runs `body(node)` over [0, count). The parallel path distributes
/// nodes across threads with a static schedule; every node writes only
/// its own output slot, so the two paths produce identical bits.
/// Exceptions thrown by any node are captured and rethrown once after
/// the loop (throwing out of an OpenMP region would terminate).
template <class F>
void run_nodes(Index count, Exec exec, F&& body) {
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto guarded = [&](Index i) {
    if (failed.load(std::memory_order_relaxed)) return;
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < count; ++i) guarded(i);
  } else {
    for (Index i = 0; i < count; ++i) guarded(i);
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace detail
}  // namespace conelift
