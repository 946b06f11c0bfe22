#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace csrbf {

/// Worker count from CSRBF_THREADS (0 or 1 = sequential); hardware
/// concurrency when unset or unparsable.
unsigned worker_count();

/// Calls body(row) for every row in [0, rows). Rows are split into
/// contiguous blocks, one per worker; each row must be independent.
template <typename Body>
void parallel_rows(std::size_t rows, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), rows);
  if (workers <= 1) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t block = (rows + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * block;
    const std::size_t end = std::min(rows, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t r = begin; r < end; ++r) body(r);
    });
  }
}

}  // namespace csrbf
