#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace frobmod {

/// Number of worker threads to use when the caller passes 0.
inline unsigned default_threads() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [begin, end) into `threads` contiguous shards, runs `body(lo, hi, acc)`
/// on each shard with its own accumulator, then folds the shard results in
/// shard order. Results are independent of the thread count whenever `merge`
/// is associative and commutative on the accumulated values.
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::uint64_t begin, std::uint64_t end, unsigned threads, const Acc& init, Body body,
                    Merge merge) {
  if (threads == 0) threads = default_threads();
  std::uint64_t total = end > begin ? end - begin : 0;
  if (threads <= 1 || total < 2) {
    Acc acc = init;
    body(begin, end, acc);
    return acc;
  }
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  std::vector<Acc> parts(threads, init);
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) {
    std::uint64_t lo = begin + total * i / threads;
    std::uint64_t hi = begin + total * (i + 1) / threads;
    pool.emplace_back([&, lo, hi, i] {
      try {
        body(lo, hi, parts[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Acc acc = init;
  for (auto& part : parts) merge(acc, part);
  return acc;
}

}  // namespace frobmod
