#include "specden/operators.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "specden/errors.hpp"
#include "specden/rng.hpp"

namespace specden {

ShardedVector OperatorHandle::apply(WorkerPool& pool, const ShardedVector& x) const {
  if (x.dim() != dim) throw layout_error("operator/vector dimension mismatch");
  ShardedVector y = make_sharded(x.layout, x.prec);
  apply_fn(pool, x, y);
  return y;
}

static void check_dense_size(std::size_t n) {
  if (n < 2) throw argument_error("dense operators need n >= 2");
  if (n > kDenseCap)
    throw argument_error("dense operator size exceeds the desk-scale cap (" +
                         std::to_string(kDenseCap) + ")");
}

OperatorHandle dense_operator(std::shared_ptr<const DenseSymmetric> m, std::string label) {
  OperatorHandle h;
  h.dim = m->n;
  h.label = std::move(label);
  h.apply_fn = [m](WorkerPool& pool, const ShardedVector& x, ShardedVector& y) {
    // Gather once; each worker computes the rows it owns. The per-row fold
    // runs over the full (unsharded) index range, so row values cannot
    // depend on the layout.
    std::vector<double> xf = gather(pool, x);
    const std::size_t n = m->n;
    pool.run_all(MsgKind::ApplyShard, [&](std::size_t w) {
      const ShardRange r = y.layout.shard_bounds[w];
      auto& out = y.shards[w];
      for (std::size_t i = r.begin; i < r.end; ++i) {
        const double* row = m->a.data() + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * xf[j];
        out[i - r.begin] = round_elem(acc, y.prec);
      }
    });
  };
  return h;
}

DenseSymmetric wigner_dense(std::size_t n, double sigma, std::uint64_t seed) {
  check_dense_size(n);
  if (!(sigma > 0.0)) throw argument_error("wigner sigma must be positive");
  DenseSymmetric m;
  m.n = n;
  m.a.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double g = sigma * gaussian(seed, i * n + j);
      m.at(i, j) = g;
      m.at(j, i) = g;
    }
  return m;
}

OperatorHandle wigner_operator(std::size_t n, double sigma, std::uint64_t seed) {
  auto m = std::make_shared<DenseSymmetric>(wigner_dense(n, sigma, seed));
  std::ostringstream label;
  label << "wigner(n=" << n << ",sigma=" << sigma << ",seed=" << seed << ")";
  return dense_operator(std::move(m), label.str());
}

DenseSymmetric spiked_dense(std::size_t n, double bulk_sigma, const std::vector<double>& spikes,
                            std::uint64_t seed) {
  if (n <= spikes.size()) throw argument_error("spiked operator needs n > number of spikes");
  DenseSymmetric m = wigner_dense(n, bulk_sigma, seed);
  // Spike directions: independent Gaussian draws, one Gram-Schmidt pass
  // against the previous directions, then normalized. Orthogonal spikes
  // place the perturbation eigenvalues exactly at the requested values
  // (before the bulk interaction shifts them).
  std::vector<std::vector<double>> dirs;
  const std::uint64_t dir_seed = mix64(seed ^ 0x5eedd1ce5ull);
  for (std::size_t s = 0; s < spikes.size(); ++s) {
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = gaussian(dir_seed, s * n + i);
    for (const auto& v : dirs) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += v[i] * u[i];
      for (std::size_t i = 0; i < n; ++i) u[i] -= c * v[i];
    }
    double nn = 0.0;
    for (double x : u) nn += x * x;
    nn = std::sqrt(nn);
    if (!(nn > 0.0)) throw numerical_error("degenerate spike direction");
    for (double& x : u) x /= nn;
    // lambda * u u^T is exactly symmetric: u[i]*u[j] and u[j]*u[i] round
    // identically, so the entries invariant survives the update.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) += spikes[s] * (u[i] * u[j]);
    dirs.push_back(std::move(u));
  }
  return m;
}

OperatorHandle spiked_operator(std::size_t n, double bulk_sigma, const std::vector<double>& spikes,
                               std::uint64_t seed) {
  auto m = std::make_shared<DenseSymmetric>(spiked_dense(n, bulk_sigma, spikes, seed));
  std::ostringstream label;
  label << "spiked(n=" << n << ",bulk_sigma=" << bulk_sigma << ",spikes=";
  for (std::size_t i = 0; i < spikes.size(); ++i) label << (i ? "," : "") << spikes[i];
  label << ",seed=" << seed << ")";
  return dense_operator(std::move(m), label.str());
}

DenseSymmetric load_dense(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open dense operator file '" + path + "'");
  std::string word;
  std::size_t n = 0;
  if (!(in >> word) || word != "dim" || !(in >> n))
    throw config_error("dense operator file must start with a 'dim N' header");
  check_dense_size(n);
  DenseSymmetric m;
  m.n = n;
  m.a.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n * n; ++i)
    if (!(in >> m.a[i]))
      throw config_error("dense operator file ended early (expected " + std::to_string(n) +
                         "x" + std::to_string(n) + " entries)");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw config_error("dense operator file is not symmetric at (" + std::to_string(i) +
                           "," + std::to_string(j) + ")");
  return m;
}

}  // namespace specden
