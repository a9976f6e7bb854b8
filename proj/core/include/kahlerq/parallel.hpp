#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace kahlerq {

// Recursive pairwise reduction over an index range.  Summation tree depends
// only on [lo, hi), never on thread count, so reductions stay bit-identical
// when the range is carved into fixed chunks and the chunks run concurrently.
template <class Term>
double pairwise_sum(std::uint64_t lo, std::uint64_t hi, Term&& term) {
  const std::uint64_t count = hi - lo;
  if (count <= 64) {
    double s = 0.0;
    for (std::uint64_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::uint64_t mid = lo + count / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

// Run tasks 0..n_tasks-1 on up to `threads` workers.  Which worker runs which
// task is unspecified; callers must make task outputs order-independent
// (e.g. write into slot [i] and merge in index order afterwards).
inline void parallel_for(int n_tasks, int threads, const std::function<void(int)>& task) {
  if (n_tasks <= 0) return;
  if (threads < 1) threads = 1;
  if (threads == 1 || n_tasks == 1) {
    for (int i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_tasks) return;
      task(i);
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = threads < n_tasks ? threads : n_tasks;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace kahlerq
