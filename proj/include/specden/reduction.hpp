#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specden/errors.hpp"

namespace specden {

// Deterministic sharded summation.
//
// A naive scheme (each worker folds its shard, coordinator folds the per-
// worker partials) is deterministic for a FIXED layout but reassociates the
// sum when the shard count changes, so 1-worker and 8-worker runs would
// differ in the last bits. To make reductions bit-identical across layouts
// the fold order is pinned to a fixed global block grid instead:
//
//   * indices are grouped into blocks [b*B, (b+1)*B) of size B = 1024,
//     independent of any shard boundaries;
//   * each block's terms are summed left-to-right in f64;
//   * block sums are folded left-to-right in f64, in ascending block order.
//
// A worker pre-folds exactly the blocks that lie entirely inside its shard
// and ships raw terms for the straddled blocks at its edges; the coordinator
// resumes those left-folds term by term. Since a left fold can be resumed
// from any prefix, the floating-point operation sequence is identical for
// every shard layout, worker count included.

inline constexpr std::size_t kReduceBlock = 1024;

// Left fold with explicit 0.0 start; the elementary deterministic sum.
inline double fold_left(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc;
}

// One worker's contribution to a blocked reduction over [begin, end).
struct BlockedPartial {
  std::size_t begin = 0, end = 0;
  std::vector<double> head;  // raw terms before the first fully-owned block
  std::vector<double> sums;  // one fold per fully-owned block, ascending
  std::vector<double> tail;  // raw terms after the last fully-owned block
};

// Builds a worker's partial. `term(i)` yields the i-th summand (e.g. the
// product a[i]*b[i] for a dot product) and is invoked exactly once per
// owned index, in ascending order.
template <class TermFn>
BlockedPartial make_blocked_partial(std::size_t begin, std::size_t end, std::size_t total,
                                    TermFn&& term, std::size_t block = kReduceBlock) {
  BlockedPartial p;
  p.begin = begin;
  p.end = end;
  // First global block fully covered by [begin, end): blocks are
  // [b*block, min((b+1)*block, total)).
  std::size_t first_full = (begin + block - 1) / block;
  std::size_t i = begin;
  for (; i < end && i < first_full * block; ++i) p.head.push_back(term(i));
  while (true) {
    std::size_t blk_end = std::min((first_full + 1) * block, total);
    if (i >= end || blk_end > end) break;  // next block not fully owned
    double acc = 0.0;
    for (; i < blk_end; ++i) acc += term(i);
    p.sums.push_back(acc);
    ++first_full;
  }
  for (; i < end; ++i) p.tail.push_back(term(i));
  return p;
}

// Folds worker partials (ascending worker order) into the total, resuming
// straddled blocks term by term. The result is a pure function of the
// logical term sequence: shard boundaries cannot affect a single bit.
inline double combine_blocked(const std::vector<BlockedPartial>& parts, std::size_t total,
                              std::size_t block = kReduceBlock) {
  double sum_of_blocks = 0.0;  // fold over closed block sums
  double open = 0.0;           // currently straddled block, if any
  std::size_t pos = 0;         // next expected global index

  auto block_end_of = [&](std::size_t i) { return std::min((i / block + 1) * block, total); };
  auto push_term = [&](double t) {
    open += t;
    ++pos;
    if (pos == block_end_of(pos - 1)) {
      sum_of_blocks += open;
      open = 0.0;
    }
  };

  for (const auto& p : parts) {
    if (p.begin != pos)
      throw protocol_error("blocked partials are not contiguous in worker order");
    for (double t : p.head) push_term(t);
    for (double s : p.sums) {
      if (pos % block != 0)
        throw protocol_error("blocked partial misaligned with the reduction grid");
      sum_of_blocks += s;
      pos = block_end_of(pos);
    }
    for (double t : p.tail) push_term(t);
    if (pos != p.end) throw protocol_error("blocked partial does not cover its range");
  }
  if (pos != total) throw protocol_error("blocked partials do not cover the vector");
  return sum_of_blocks;
}

// Coordinator-side combination of one scalar partial per worker: left fold
// in ascending worker index, f64. Used where per-worker scalars are the
// natural granularity (never for cross-layout-invariant dot products; see
// the block grid above for those).
inline double reduce_ordered(std::span<const double> partials) {
  return fold_left(partials);
}

}  // namespace specden
