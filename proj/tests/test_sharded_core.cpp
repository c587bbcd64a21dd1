#include "doctest.h"

#include <cmath>
#include <cstring>

#include "specden/errors.hpp"
#include "specden/layout.hpp"
#include "specden/reduction.hpp"
#include "specden/rng.hpp"
#include "specden/sharded.hpp"
#include "support/test_util.hpp"

using namespace specden;
using namespace testutil;

TEST_CASE("split_evenly covers the index space with contiguous shards") {
  for (std::size_t dim : {1u, 2u, 7u, 10u, 1000u})
    for (std::size_t n : {1u, 2u, 3u, 4u, 8u, 16u}) {
      ShardLayout l = split_evenly(dim, n);
      CHECK(l.total_dim == dim);
      CHECK(l.worker_count() == std::min(dim, n));
      std::size_t covered = 0;
      for (const auto& r : l.shard_bounds) covered += r.size();
      CHECK(covered == dim);
      // Sizes differ by at most one.
      std::size_t lo = dim, hi = 0;
      for (const auto& r : l.shard_bounds) {
        lo = std::min(lo, r.size());
        hi = std::max(hi, r.size());
      }
      CHECK(hi - lo <= 1);
    }
}

TEST_CASE("layout validation rejects gaps, overlaps, and empty shards") {
  ShardLayout l;
  l.total_dim = 10;
  l.shard_bounds = {{0, 4}, {5, 10}};  // gap
  CHECK_THROWS_AS(validate_layout(l), layout_error);
  l.shard_bounds = {{0, 6}, {5, 10}};  // overlap
  CHECK_THROWS_AS(validate_layout(l), layout_error);
  l.shard_bounds = {{0, 5}, {5, 5}, {5, 10}};  // empty
  CHECK_THROWS_AS(validate_layout(l), layout_error);
  l.shard_bounds = {{0, 5}, {5, 9}};  // short
  CHECK_THROWS_AS(validate_layout(l), layout_error);
  l.shard_bounds = {{0, 5}, {5, 10}};
  CHECK_NOTHROW(validate_layout(l));
}

TEST_CASE("counter generator is a pure function of (seed, index)") {
  CHECK(gaussian(42, 7) == gaussian(42, 7));
  CHECK(gaussian(42, 7) != gaussian(43, 7));
  CHECK(gaussian(42, 7) != gaussian(42, 8));
  CHECK(rademacher(1, 0) * rademacher(1, 0) == 1.0);
  // uniform01 stays inside the open interval.
  for (std::uint64_t i = 0; i < 1000; ++i) {
    double u = uniform01(5, i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("rademacher empirical mean over 1e6 draws is within 3e-3 of zero") {
  // Monte-Carlo bound 3/sqrt(P) from direct sampling.
  const std::size_t P = 1000000;
  double s = 0.0;
  for (std::size_t i = 0; i < P; ++i) s += rademacher(7, i);
  CHECK(std::abs(s / P) < 3e-3);
}

TEST_CASE("gaussian draws have sane first and second moments") {
  const std::size_t P = 200000;
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < P; ++i) {
    double g = gaussian(11, i);
    s += g;
    s2 += g * g;
  }
  CHECK(std::abs(s / P) < 0.01);
  CHECK(s2 / P == doctest::Approx(1.0).epsilon(0.02));
}

// ---------------------------------------------------------------------------
// Blocked deterministic reduction

static double reference_blocked_sum(const std::vector<double>& terms, std::size_t block) {
  // Straight single-owner evaluation of the fixed reduction DAG.
  double total = 0.0;
  for (std::size_t b = 0; b * block < terms.size(); ++b) {
    double s = 0.0;
    for (std::size_t i = b * block; i < std::min((b + 1) * block, terms.size()); ++i)
      s += terms[i];
    total += s;
  }
  return total;
}

TEST_CASE("blocked partials reproduce the fixed reduction DAG for any split") {
  const std::size_t P = 10;
  const std::size_t B = 4;
  std::vector<double> terms(P);
  for (std::size_t i = 0; i < P; ++i) terms[i] = gaussian(3, i) * std::pow(10.0, (int)(i % 5) - 2);
  double ref = reference_blocked_sum(terms, B);

  std::vector<std::vector<std::size_t>> splits = {
      {10}, {5, 5}, {3, 3, 2, 2}, {1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, {7, 3}, {2, 6, 2}};
  for (const auto& sizes : splits) {
    std::vector<BlockedPartial> parts;
    std::size_t at = 0;
    for (std::size_t len : sizes) {
      parts.push_back(make_blocked_partial(at, at + len, P, [&](std::size_t i) { return terms[i]; }, B));
      at += len;
    }
    double got = combine_blocked(parts, P, B);
    CHECK(std::memcmp(&got, &ref, sizeof got) == 0);  // bitwise
  }
}

TEST_CASE("combine_blocked rejects malformed partial sets") {
  const std::size_t P = 8, B = 4;
  auto term = [](std::size_t i) { return double(i); };
  auto p0 = make_blocked_partial(0, 4, P, term, B);
  auto p1 = make_blocked_partial(4, 8, P, term, B);
  CHECK_NOTHROW(combine_blocked({p0, p1}, P, B));
  CHECK_THROWS_AS(combine_blocked({p1, p0}, P, B), protocol_error);  // out of order
  CHECK_THROWS_AS(combine_blocked({p0}, P, B), protocol_error);      // missing coverage
}

// ---------------------------------------------------------------------------
// draw_probe

TEST_CASE("gaussian probe is identical on 1 shard and 2 shards") {
  ProbeSpec spec;  // seed 42, gaussian, normalized
  WorkerPool p1 = make_pool(4, 1), p2 = make_pool(4, 2);
  auto v1 = gather(p1, draw_probe(p1, spec, Precision::f64));
  auto v2 = gather(p2, draw_probe(p2, spec, Precision::f64));
  REQUIRE(v1.size() == v2.size());
  for (std::size_t i = 0; i < v1.size(); ++i) CHECK(v1[i] == v2[i]);
}

TEST_CASE("probe layout invariance holds for many dims, layouts, precisions") {
  for (std::size_t dim : {5u, 129u, 1025u})
    for (Precision prec : {Precision::f64, Precision::f32}) {
      ProbeSpec spec;
      spec.seed = 99;
      WorkerPool ref = make_pool(dim, 1);
      auto expect = gather(ref, draw_probe(ref, spec, prec));
      for (std::size_t n : {2u, 3u, 7u}) {
        WorkerPool pool = make_pool(dim, n);
        auto got = gather(pool, draw_probe(pool, spec, prec));
        for (std::size_t i = 0; i < dim; ++i) CHECK(got[i] == expect[i]);
      }
    }
}

TEST_CASE("one_hot probe places a single unit coordinate") {
  WorkerPool pool = make_pool(5, 2);
  ProbeSpec spec;
  spec.distribution = ProbeDist::one_hot;
  spec.one_hot_index = 2;
  spec.normalize = false;
  auto v = gather(pool, draw_probe(pool, spec, Precision::f64));
  std::vector<double> expect = {0, 0, 1, 0, 0};
  CHECK(v == expect);

  spec.one_hot_index = 5;
  CHECK_THROWS_AS(draw_probe(pool, spec, Precision::f64), argument_error);
}

TEST_CASE("rademacher probe of dimension 1e6 has near-zero empirical mean") {
  WorkerPool pool = make_pool(1000000, 4);
  ProbeSpec spec;
  spec.seed = 7;
  spec.distribution = ProbeDist::rademacher;
  spec.normalize = false;
  auto v = gather(pool, draw_probe(pool, spec, Precision::f64));
  double s = 0.0;
  for (double x : v) s += x;
  CHECK(std::abs(s / v.size()) < 3e-3);
}

TEST_CASE("normalized probe has unit 2-norm within element precision") {
  for (Precision prec : {Precision::f64, Precision::f32}) {
    WorkerPool pool = make_pool(300, 3);
    ProbeSpec spec;
    spec.seed = 4;
    auto v = draw_probe(pool, spec, prec);
    double tol = (prec == Precision::f64) ? 4e-16 : 4e-7;
    CHECK(std::abs(norm2(pool, v) - 1.0) < tol);
  }
}

// ---------------------------------------------------------------------------
// dot / axpy / scale / norm2

TEST_CASE("dot of unit basis vectors and small integer vectors") {
  WorkerPool pool = make_pool(3, 2);
  auto e1 = from_values(pool, {1, 0, 0});
  CHECK(dot(pool, e1, e1) == 1.0);
  auto a = from_values(pool, {1, 2, 3});
  auto b = from_values(pool, {4, 5, 6});
  CHECK(dot(pool, a, b) == 32.0);
  CHECK(dot(pool, a, b) == dot(pool, b, a));
}

TEST_CASE("dot is bitwise identical across shard counts") {
  for (std::size_t dim : {1000u, 5000u})
    for (Precision prec : {Precision::f64, Precision::f32}) {
      WorkerPool ref = make_pool(dim, 1);
      auto a1 = random_vector(ref, 21, prec);
      auto b1 = random_vector(ref, 22, prec);
      double expect = dot(ref, a1, b1);
      for (std::size_t n : {2u, 4u, 7u}) {
        WorkerPool pool = make_pool(dim, n);
        auto a = random_vector(pool, 21, prec);
        auto b = random_vector(pool, 22, prec);
        double got = dot(pool, a, b);
        CHECK(std::memcmp(&got, &expect, sizeof got) == 0);
      }
    }
}

TEST_CASE("dot symmetry is bitwise") {
  WorkerPool pool = make_pool(4097, 5);
  auto a = random_vector(pool, 31);
  auto b = random_vector(pool, 32);
  double ab = dot(pool, a, b), ba = dot(pool, b, a);
  CHECK(std::memcmp(&ab, &ba, sizeof ab) == 0);
}

TEST_CASE("dot matches a plain sequential sum when the vector fits one block") {
  // For P <= 1024 the block grid has a single block, so the deterministic
  // DAG degenerates to the familiar left-to-right sum.
  const std::size_t P = 1000;
  WorkerPool pool = make_pool(P, 4);
  auto a = random_vector(pool, 41);
  auto b = random_vector(pool, 42);
  auto af = gather(pool, a), bf = gather(pool, b);
  double ref = 0.0;
  for (std::size_t i = 0; i < P; ++i) ref += af[i] * bf[i];
  double got = dot(pool, a, b);
  CHECK(std::memcmp(&got, &ref, sizeof got) == 0);
}

TEST_CASE("axpy with alpha 0 returns y exactly; norm2 of (3,4) is 5") {
  WorkerPool pool = make_pool(64, 3);
  auto x = random_vector(pool, 1);
  auto y = random_vector(pool, 2);
  auto r = axpy(pool, 0.0, x, y);
  CHECK(gather(pool, r) == gather(pool, y));

  WorkerPool p2 = make_pool(2, 2);
  auto v = from_values(p2, {3, 4});
  CHECK(norm2(p2, v) == 5.0);
}

TEST_CASE("scale then norm2 returns 1 within 4 ulp") {
  for (Precision prec : {Precision::f64, Precision::f32}) {
    WorkerPool pool = make_pool(777, 3);
    auto x = random_vector(pool, 17, prec);
    auto unit = scale(pool, x, 1.0 / norm2(pool, x));
    double tol = 4.0 * 2.0 * unit_roundoff(prec);  // 4 ulp at 1.0
    CHECK(std::abs(norm2(pool, unit) - 1.0) <= tol);
  }
}

TEST_CASE("axpy and scale results are bitwise layout invariant") {
  const std::size_t dim = 2050;  // straddles block boundaries
  for (Precision prec : {Precision::f64, Precision::f32}) {
    WorkerPool ref = make_pool(dim, 1);
    auto x1 = random_vector(ref, 51, prec);
    auto y1 = random_vector(ref, 52, prec);
    auto ax = gather(ref, axpy(ref, 0.7, x1, y1));
    auto sc = gather(ref, scale(ref, x1, -1.25));
    for (std::size_t n : {3u, 8u}) {
      WorkerPool pool = make_pool(dim, n);
      auto x = random_vector(pool, 51, prec);
      auto y = random_vector(pool, 52, prec);
      CHECK(gather(pool, axpy(pool, 0.7, x, y)) == ax);
      CHECK(gather(pool, scale(pool, x, -1.25)) == sc);
    }
  }
}

TEST_CASE("f32 mode stores only f32-representable values") {
  WorkerPool pool = make_pool(100, 2);
  auto v = draw_probe(pool, ProbeSpec{.seed = 8}, Precision::f32);
  auto w = axpy(pool, 0.3, v, v);
  for (double x : gather(pool, w)) CHECK(static_cast<double>(static_cast<float>(x)) == x);
}

TEST_CASE("mismatched operands raise layout errors; bad scale factor rejected") {
  WorkerPool p3 = make_pool(3, 1), p4 = make_pool(4, 1);
  auto a = from_values(p3, {1, 2, 3});
  auto b = from_values(p4, {1, 2, 3, 4});
  CHECK_THROWS_AS(dot(p3, a, b), layout_error);
  CHECK_THROWS_AS(axpy(p3, 1.0, a, b), layout_error);
  auto af32 = from_values(p3, {1, 2, 3}, Precision::f32);
  CHECK_THROWS_AS(dot(p3, a, af32), layout_error);
  CHECK_THROWS_AS(scale(p3, a, std::nan("")), argument_error);
  CHECK_THROWS_AS(scale(p3, a, INFINITY), argument_error);
}

TEST_CASE("same seed and config give byte-identical probes across runs") {
  ProbeSpec spec;
  spec.seed = 4242;
  WorkerPool pool = make_pool(512, 4);
  auto v1 = gather(pool, draw_probe(pool, spec, Precision::f64));
  auto v2 = gather(pool, draw_probe(pool, spec, Precision::f64));
  CHECK(std::memcmp(v1.data(), v2.data(), v1.size() * sizeof(double)) == 0);
}
