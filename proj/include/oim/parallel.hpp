#pragma once

#include <cstddef>

namespace oim {

// Worker cap: OIMLAB_THREADS if set (>= 1), else hardware concurrency.
unsigned max_threads();

namespace detail {
void parallel_for_impl(std::size_t count, void* ctx,
                       void (*body)(void*, std::size_t));
}

// Runs body(i) for i in [0, count). Each index must write only its own
// output slot; results are then identical for any thread count.
// The first exception thrown by a body is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& body) {
  auto thunk = [](void* ctx, std::size_t i) { (*static_cast<Fn*>(ctx))(i); };
  detail::parallel_for_impl(count, &body, thunk);
}

}  // namespace oim
