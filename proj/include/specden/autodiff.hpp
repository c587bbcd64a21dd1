#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specden/errors.hpp"
#include "specden/precision.hpp"

namespace specden {

// Row-major 2-D tensor. Everything the two test architectures need is
// expressible with matrices (a scalar is 1x1, a bias row is 1xn).
struct Tensor {
  std::size_t rows = 0, cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), v(r * c, fill) {}

  std::size_t numel() const { return rows * cols; }
  double& at(std::size_t i, std::size_t j) { return v[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return v[i * cols + j]; }
};

// Reverse-mode autodiff tape with eager evaluation.
//
// The one property everything downstream leans on: grad() does not compute
// gradients out-of-band — it EMITS new primitive nodes for every vector-
// Jacobian product, so the returned gradients are ordinary differentiable
// nodes. Differentiating through a gradient (the double backward of the
// Hessian-vector product) is then just calling grad() again on a scalar
// built from first-gradient nodes. The primitive set is closed under its
// own VJPs, which is what makes that recursion well-founded.
//
// In f32 mode every node's buffer is rounded to single precision after
// evaluation, reproducing a float32 training pipeline's storage; the
// arithmetic inside a single primitive runs in f64.
class Graph {
 public:
  explicit Graph(Precision prec = Precision::f64) : prec_(prec) {}

  // Leaves. Constants never require gradients; params always do.
  int constant(Tensor t);
  int param(Tensor t);

  // Primitives (shapes checked; all return the new node id).
  int add(int a, int b);        // same shape
  int sub(int a, int b);        // same shape
  int mul(int a, int b);        // elementwise, same shape
  int smul(int a, double c);    // scalar multiple
  int addrow(int a, int row);   // (m x n) + broadcast (1 x n)
  int mulcol(int a, int col);   // (m x n) row-scaled by (m x 1)
  int matmul(int a, int b, bool ta = false, bool tb = false);
  int tanh_(int a);
  int exp_(int a);
  int log_(int a);
  int recip(int a);
  int softmax_rows(int a);      // softmax along the last axis, per row
  int sum_rows(int a);          // (m x n) -> (1 x n)
  int sum_cols(int a);          // (m x n) -> (m x 1)
  int sum_all(int a);           // (m x n) -> (1 x 1)

  // Composites built from the primitives above.
  int mean_all(int a);                        // sum_all / numel
  int mse(int pred, int target);              // mean squared error, all elements
  int cross_entropy(int logits, int onehot);  // mean over rows of -<onehot, log softmax>

  // Reverse-mode gradients of a scalar loss with respect to `wrt` nodes.
  // Emits VJP nodes onto this graph; with create_graph the emitted nodes
  // are differentiable (that is the default because the Hessian path needs
  // it), without it they are detached constants-in-spirit.
  std::vector<int> grad(int loss, const std::vector<int>& wrt, bool create_graph = true);

  const Tensor& val(int id) const { return nodes_.at(id).val; }
  std::size_t node_count() const { return nodes_.size(); }
  Precision precision() const { return prec_; }

 private:
  enum class Op {
    kConst, kParam, kAdd, kSub, kMul, kSmul, kAddRow, kMulCol, kMatmul,
    kTanh, kExp, kLog, kRecip, kSoftmax, kSumRows, kSumCols, kSumAll,
  };
  struct Node {
    Op op;
    int a = -1, b = -1;
    bool ta = false, tb = false;
    double c = 0.0;
    bool requires_grad = false;
    Tensor val;
  };

  int push(Node n);
  int ones(std::size_t r, std::size_t c);
  void accumulate(std::vector<int>& adj, int node, int term);
  const Node& node(int id) const { return nodes_.at(id); }

  std::vector<Node> nodes_;
  Precision prec_;
  bool emit_detached_ = false;
};

}  // namespace specden
