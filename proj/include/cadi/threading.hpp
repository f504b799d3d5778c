#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace cadi {

/// Worker count for internal parallel loops. Reads CADI_THREADS once;
/// defaults to 1 so timings and thread schedules are predictable unless the
/// caller opts in.
int worker_count();

/// Sum with pairwise (tree) splitting. Summation order depends only on the
/// input layout, so reductions built on top of it are independent of the
/// worker count.
double pairwise_sum(std::span<const double> xs);

/// Calls fn(chunk_index, begin, end) for every chunk of [0, count), possibly
/// from several threads. Chunk boundaries are fixed by chunk_size, so any
/// per-chunk results written into chunk-indexed slots are identical for every
/// worker count.
void for_each_chunk(std::size_t count, std::size_t chunk_size,
                    const std::function<void(std::size_t, std::size_t,
                                             std::size_t)>& fn);

}  // namespace cadi
