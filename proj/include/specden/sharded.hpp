#pragma once

#include <cstdint>
#include <vector>

#include "specden/layout.hpp"
#include "specden/pool.hpp"
#include "specden/precision.hpp"

namespace specden {

// A logical vector of layout.total_dim reals, stored shard-by-shard.
// Elements are held as f64 values; in f32 mode every operation rounds its
// result elements to the nearest single before storing, so the buffer only
// ever contains f32-representable values and the arithmetic is exactly the
// float32 storage pipeline. Scalar reductions stay f64 in both modes.
struct ShardedVector {
  ShardLayout layout;
  Precision prec = Precision::f64;
  std::vector<std::vector<double>> shards;

  std::size_t dim() const { return layout.total_dim; }

  // Coordinator-side element access for tests and setup; O(workers).
  double get(std::size_t i) const;
  void set(std::size_t i, double v);
};

// Zero vector in the pool's layout.
ShardedVector make_sharded(const ShardLayout& layout, Precision prec);

// Random probe specification. Draws are keyed on (seed, global index) so
// the logical vector is independent of the shard layout.
enum class ProbeDist { gaussian, rademacher, one_hot };

struct ProbeSpec {
  std::uint64_t seed = 42;
  ProbeDist distribution = ProbeDist::gaussian;
  std::size_t one_hot_index = 0;
  bool normalize = true;
};

ProbeDist parse_probe_dist(const std::string& s);
const char* probe_dist_name(ProbeDist d);

// Draws the probe through the pool (each worker fills its own shard). With
// normalize, the global 2-norm is 1 up to element-precision rounding.
ShardedVector draw_probe(WorkerPool& pool, const ProbeSpec& spec, Precision prec);

// Deterministic inner product: per-element products in f64 (exact for f32
// elements), folded on the fixed 1024-block grid; bit-identical for every
// shard layout of the same logical inputs.
double dot(WorkerPool& pool, const ShardedVector& a, const ShardedVector& b);

// sqrt of the deterministic dot(x, x).
double norm2(WorkerPool& pool, const ShardedVector& x);

// Elementwise y + alpha*x, rounded to the result precision per element.
ShardedVector axpy(WorkerPool& pool, double alpha, const ShardedVector& x,
                   const ShardedVector& y);

// Elementwise c*x, rounded per element.
ShardedVector scale(WorkerPool& pool, const ShardedVector& x, double c);

// Assembles the full logical vector on the coordinator (ascending shards).
std::vector<double> gather(WorkerPool& pool, const ShardedVector& x);

// Distributes a full coordinator vector into shards, rounding to prec.
ShardedVector scatter(WorkerPool& pool, const std::vector<double>& full, Precision prec);

}  // namespace specden
