#include "specden/sharded.hpp"

#include <cmath>
#include <cstring>

#include "specden/errors.hpp"
#include "specden/reduction.hpp"
#include "specden/rng.hpp"

namespace specden {

double ShardedVector::get(std::size_t i) const {
  std::size_t w = layout.owner(i);
  return shards[w][i - layout.shard_bounds[w].begin];
}

void ShardedVector::set(std::size_t i, double v) {
  std::size_t w = layout.owner(i);
  shards[w][i - layout.shard_bounds[w].begin] = round_elem(v, prec);
}

ShardedVector make_sharded(const ShardLayout& layout, Precision prec) {
  ShardedVector v;
  v.layout = layout;
  v.prec = prec;
  v.shards.resize(layout.worker_count());
  for (std::size_t w = 0; w < layout.worker_count(); ++w)
    v.shards[w].assign(layout.shard_bounds[w].size(), 0.0);
  return v;
}

ProbeDist parse_probe_dist(const std::string& s) {
  if (s == "gaussian") return ProbeDist::gaussian;
  if (s == "rademacher") return ProbeDist::rademacher;
  if (s == "one_hot") return ProbeDist::one_hot;
  throw config_error("unknown probe distribution '" + s + "'");
}

const char* probe_dist_name(ProbeDist d) {
  switch (d) {
    case ProbeDist::gaussian: return "gaussian";
    case ProbeDist::rademacher: return "rademacher";
    default: return "one_hot";
  }
}

static void check_pool(const WorkerPool& pool, const ShardedVector& a) {
  if (!(a.layout == pool.layout()))
    throw layout_error("sharded vector does not belong to this pool's layout");
}

static void check_same_shape(const WorkerPool& pool, const ShardedVector& a,
                             const ShardedVector& b) {
  check_pool(pool, a);
  if (!(a.layout == b.layout)) throw layout_error("sharded vectors have different layouts");
  if (a.prec != b.prec) throw layout_error("sharded vectors have different precision");
}

ShardedVector draw_probe(WorkerPool& pool, const ProbeSpec& spec, Precision prec) {
  const ShardLayout& layout = pool.layout();
  if (spec.distribution == ProbeDist::one_hot && spec.one_hot_index >= layout.total_dim)
    throw argument_error("one_hot index out of range");
  ShardedVector v = make_sharded(layout, prec);
  pool.run_all(MsgKind::ApplyShard, [&](std::size_t w) {
    const ShardRange r = layout.shard_bounds[w];
    auto& out = v.shards[w];
    for (std::size_t i = r.begin; i < r.end; ++i) {
      double x;
      switch (spec.distribution) {
        case ProbeDist::gaussian: x = gaussian(spec.seed, i); break;
        case ProbeDist::rademacher: x = rademacher(spec.seed, i); break;
        default: x = (i == spec.one_hot_index) ? 1.0 : 0.0; break;
      }
      out[i - r.begin] = round_elem(x, prec);
    }
  });
  if (spec.normalize) {
    double n = norm2(pool, v);
    if (!(n > 0.0)) throw numerical_error("probe has zero norm");
    v = scale(pool, v, 1.0 / n);
  }
  return v;
}

double dot(WorkerPool& pool, const ShardedVector& a, const ShardedVector& b) {
  check_same_shape(pool, a, b);
  const ShardLayout& layout = a.layout;
  std::vector<BlockedPartial> parts(layout.worker_count());
  pool.run_all(MsgKind::DotPartial, [&](std::size_t w) {
    const ShardRange r = layout.shard_bounds[w];
    const double* xa = a.shards[w].data();
    const double* xb = b.shards[w].data();
    parts[w] = make_blocked_partial(r.begin, r.end, layout.total_dim, [&](std::size_t i) {
      return xa[i - r.begin] * xb[i - r.begin];
    });
  });
  // Combined in ascending worker order; straddled blocks resume in index
  // order, so the fold sequence is the same for every layout.
  return combine_blocked(parts, layout.total_dim);
}

double norm2(WorkerPool& pool, const ShardedVector& x) {
  return std::sqrt(dot(pool, x, x));
}

ShardedVector axpy(WorkerPool& pool, double alpha, const ShardedVector& x,
                   const ShardedVector& y) {
  check_same_shape(pool, x, y);
  ShardedVector out = make_sharded(x.layout, x.prec);
  pool.run_all(MsgKind::Axpy, [&](std::size_t w) {
    const auto& xs = x.shards[w];
    const auto& ys = y.shards[w];
    auto& os = out.shards[w];
    for (std::size_t j = 0; j < os.size(); ++j)
      os[j] = round_elem(ys[j] + alpha * xs[j], out.prec);
  });
  return out;
}

ShardedVector scale(WorkerPool& pool, const ShardedVector& x, double c) {
  if (!std::isfinite(c)) throw argument_error("scale factor is not finite");
  check_pool(pool, x);
  ShardedVector out = make_sharded(x.layout, x.prec);
  pool.run_all(MsgKind::Scale, [&](std::size_t w) {
    const auto& xs = x.shards[w];
    auto& os = out.shards[w];
    for (std::size_t j = 0; j < os.size(); ++j) os[j] = round_elem(c * xs[j], out.prec);
  });
  return out;
}

std::vector<double> gather(WorkerPool& pool, const ShardedVector& x) {
  check_pool(pool, x);
  std::vector<double> full(x.dim());
  pool.run_all(MsgKind::Gather, [&](std::size_t w) {
    const ShardRange r = x.layout.shard_bounds[w];
    std::memcpy(full.data() + r.begin, x.shards[w].data(), r.size() * sizeof(double));
  });
  return full;
}

ShardedVector scatter(WorkerPool& pool, const std::vector<double>& full, Precision prec) {
  const ShardLayout& layout = pool.layout();
  if (full.size() != layout.total_dim)
    throw layout_error("scatter source length does not match layout");
  ShardedVector v = make_sharded(layout, prec);
  pool.run_all(MsgKind::Scatter, [&](std::size_t w) {
    const ShardRange r = layout.shard_bounds[w];
    auto& out = v.shards[w];
    for (std::size_t j = 0; j < r.size(); ++j)
      out[j] = round_elem(full[r.begin + j], prec);
  });
  return v;
}

}  // namespace specden
