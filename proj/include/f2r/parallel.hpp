#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace f2r {

// Splits [0, count) into `workers` contiguous chunks and runs f(begin, end, w)
// for each on its own thread. Exceptions are rethrown in chunk order.
template <typename F>
void parallel_chunks(unsigned workers, std::uint64_t count, F&& f) {
  workers = std::max(1U, workers);
  if (workers == 1 || count < 2) {
    f(std::uint64_t{0}, count, 0U);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, count));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    threads.emplace_back([&, begin, end, w] {
      try {
        f(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace f2r
