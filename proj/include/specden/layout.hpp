#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "specden/errors.hpp"

namespace specden {

// Half-open index range [begin, end) owned by one worker.
struct ShardRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

// Partition of [0, total_dim) into contiguous, non-empty, sorted shards,
// one per worker. The layout is the artifact's analogue of placing slices
// of a model's parameter vector on separate devices.
struct ShardLayout {
  std::size_t total_dim = 0;
  std::vector<ShardRange> shard_bounds;

  std::size_t worker_count() const { return shard_bounds.size(); }

  // Worker owning global index i.
  std::size_t owner(std::size_t i) const {
    for (std::size_t w = 0; w < shard_bounds.size(); ++w)
      if (i < shard_bounds[w].end) return w;
    throw argument_error("index out of range in ShardLayout::owner");
  }

  bool operator==(const ShardLayout& o) const {
    if (total_dim != o.total_dim || shard_bounds.size() != o.shard_bounds.size()) return false;
    for (std::size_t w = 0; w < shard_bounds.size(); ++w)
      if (shard_bounds[w].begin != o.shard_bounds[w].begin ||
          shard_bounds[w].end != o.shard_bounds[w].end)
        return false;
    return true;
  }
};

// Validates the covering invariants; throws layout_error on violation.
inline void validate_layout(const ShardLayout& l) {
  if (l.total_dim == 0) throw layout_error("layout covers zero dimensions");
  if (l.shard_bounds.empty()) throw layout_error("layout has no shards");
  std::size_t expect = 0;
  for (const auto& r : l.shard_bounds) {
    if (r.begin != expect) throw layout_error("shard bounds leave a gap or overlap");
    if (r.end <= r.begin) throw layout_error("empty shard range");
    expect = r.end;
  }
  if (expect != l.total_dim) throw layout_error("shard bounds do not cover total_dim");
}

// Evenly split [0, dim) into n contiguous shards (first dim % n shards get
// one extra element). Standard layout used when none is given explicitly.
inline ShardLayout split_evenly(std::size_t dim, std::size_t n) {
  if (n == 0 || dim == 0) throw layout_error("split_evenly needs dim > 0 and n > 0");
  if (n > dim) n = dim;  // never hand a worker an empty shard
  ShardLayout l;
  l.total_dim = dim;
  std::size_t base = dim / n, extra = dim % n, at = 0;
  for (std::size_t w = 0; w < n; ++w) {
    std::size_t len = base + (w < extra ? 1 : 0);
    l.shard_bounds.push_back({at, at + len});
    at += len;
  }
  validate_layout(l);
  return l;
}

}  // namespace specden
