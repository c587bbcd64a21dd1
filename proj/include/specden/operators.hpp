#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "specden/sharded.hpp"

namespace specden {

// A symmetric linear operator given only by its action on vectors. This is
// the whole point of the artifact: the spectral pipeline never needs matrix
// entries, only apply().
struct OperatorHandle {
  std::size_t dim = 0;
  std::string label;
  std::function<void(WorkerPool&, const ShardedVector&, ShardedVector&)> apply_fn;

  ShardedVector apply(WorkerPool& pool, const ShardedVector& x) const;
};

// Dense symmetric matrix for oracle use; capped so tests stay desk-scale.
inline constexpr std::size_t kDenseCap = 2048;

struct DenseSymmetric {
  std::size_t n = 0;
  std::vector<double> a;  // row-major n*n, a[i*n+j] == a[j*n+i] exactly

  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

// Matrix-vector product with per-row sequential f64 accumulation. Rows are
// computed by the worker owning the output index from a gathered copy of x,
// so the result is bit-identical for every shard layout.
OperatorHandle dense_operator(std::shared_ptr<const DenseSymmetric> m, std::string label);

// Wigner matrix: i.i.d. N(0, sigma^2) entries, upper triangle drawn with
// the counter-based generator and mirrored. Eigenvalues concentrate on
// [-2*sigma*sqrt(n), 2*sigma*sqrt(n)].
DenseSymmetric wigner_dense(std::size_t n, double sigma, std::uint64_t seed);
OperatorHandle wigner_operator(std::size_t n, double sigma, std::uint64_t seed);

// Wigner bulk plus rank-one spikes lambda * u u^T with random directions,
// orthonormalized against each other with one Gram-Schmidt pass.
DenseSymmetric spiked_dense(std::size_t n, double bulk_sigma, const std::vector<double>& spikes,
                            std::uint64_t seed);
OperatorHandle spiked_operator(std::size_t n, double bulk_sigma, const std::vector<double>& spikes,
                               std::uint64_t seed);

// Dense operator file: header "dim N", then N rows of N reals. Symmetry is
// validated on load.
DenseSymmetric load_dense(const std::string& path);

}  // namespace specden
