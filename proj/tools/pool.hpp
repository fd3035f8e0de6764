#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace colombeau::app {

/// Runs task(i) for i in [0, count) on up to `workers` threads. Results come
/// back in index order, so the output never depends on scheduling. The first
/// exception by index is rethrown after every task has finished.
template <typename Task>
auto parallel_map(int workers, std::size_t count, Task&& task) {
  using Result = std::decay_t<decltype(task(std::size_t{0}))>;
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < std::min(threads, count); ++k) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace colombeau::app
