#include <algorithm>
#include <cmath>
#include <cstdio>
#include <doctest.h>

#include "bcl/grad_check.hpp"
#include "bcl/losses.hpp"
#include "bcl/matrix.hpp"
#include "bcl/params.hpp"
#include "bcl/rng.hpp"
#include "bcl/sparse.hpp"

using namespace bcl;

namespace {

DenseMatrix random_matrix(int rows, int cols, Rng& rng, double scale = 1.0) {
  DenseMatrix m(rows, cols);
  for (double& v : m.values) v = rng.uniform(-scale, scale);
  return m;
}

}  // namespace

TEST_CASE("dense_matmul basics") {
  DenseMatrix eye(2, 2);
  eye(0, 0) = 1.0;
  eye(1, 1) = 1.0;
  DenseMatrix m(2, 2);
  m(0, 0) = 3.0;
  m(0, 1) = -1.0;
  m(1, 0) = 2.0;
  m(1, 1) = 5.0;
  CHECK(dense_matmul(eye, m) == m);

  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 3.0;
  a(1, 1) = 4.0;
  DenseMatrix ones(2, 1, 1.0);
  const DenseMatrix prod = dense_matmul(a, ones);
  CHECK(prod(0, 0) == doctest::Approx(3.0));
  CHECK(prod(1, 0) == doctest::Approx(7.0));

  DenseMatrix bad(2, 3);
  CHECK_THROWS_AS(dense_matmul(bad, bad), std::invalid_argument);
}

TEST_CASE("dense_matmul identity/associativity/distributivity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed + 17);
    const int n = rng.uniform_int(1, 6);
    const int k = rng.uniform_int(1, 6);
    const int m = rng.uniform_int(1, 6);
    const DenseMatrix a = random_matrix(n, k, rng);
    const DenseMatrix b = random_matrix(k, m, rng);
    const DenseMatrix c = random_matrix(k, m, rng);

    DenseMatrix eye(k, k);
    for (int i = 0; i < k; ++i) eye(i, i) = 1.0;
    const DenseMatrix ai = dense_matmul(a, eye);
    for (std::size_t i = 0; i < ai.values.size(); ++i) {
      CHECK(ai.values[i] == doctest::Approx(a.values[i]).epsilon(1e-12));
    }

    const DenseMatrix lhs = dense_matmul(a, add(b, c));
    const DenseMatrix rhs = add(dense_matmul(a, b), dense_matmul(a, c));
    for (std::size_t i = 0; i < lhs.values.size(); ++i) {
      CHECK(std::abs(lhs.values[i] - rhs.values[i]) <= 1e-12);
    }
  }
}

TEST_CASE("spmm") {
  // Identity adjacency leaves the dense operand unchanged.
  CsrMatrix eye = csr_from_triplets(3, 3, {{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}});
  Rng rng(5);
  const DenseMatrix h = random_matrix(3, 4, rng);
  CHECK(spmm(eye, h) == h);

  // Two-node single-edge normalized adjacency: every entry 0.5.
  CsrMatrix adj = csr_from_triplets(
      2, 2, {{0, 0, 0.5}, {0, 1, 0.5}, {1, 0, 0.5}, {1, 1, 0.5}});
  DenseMatrix x(2, 1);
  x(0, 0) = 2.0;
  x(1, 0) = 4.0;
  const DenseMatrix y = spmm(adj, x);
  CHECK(y(0, 0) == doctest::Approx(3.0));
  CHECK(y(1, 0) == doctest::Approx(3.0));

  DenseMatrix short_h(1, 4);
  CHECK_THROWS_AS(spmm(adj, short_h), std::invalid_argument);
}

TEST_CASE("relu forward and backward") {
  DenseMatrix x(1, 2);
  x(0, 0) = -1.0;
  x(0, 1) = 2.0;
  const DenseMatrix y = relu(x);
  CHECK(y(0, 0) == 0.0);
  CHECK(y(0, 1) == 2.0);

  DenseMatrix upstream(1, 2, 5.0);
  const DenseMatrix grad = relu_backward(upstream, x);
  CHECK(grad(0, 0) == 0.0);
  CHECK(grad(0, 1) == 5.0);

  DenseMatrix neg(2, 2, -3.0);
  const DenseMatrix zeros = relu(neg);
  for (double v : zeros.values) CHECK(v == 0.0);
}

TEST_CASE("softmax cross-entropy worked values") {
  DenseMatrix logits(2, 2);
  std::vector<int> labels{0, 0};

  SUBCASE("uniform logits give ln 2") {
    const LossResult res = softmax_ce_loss(logits, labels, {0});
    CHECK(res.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }

  SUBCASE("confident correct prediction") {
    logits(0, 0) = 10.0;
    logits(0, 1) = -10.0;
    const LossResult res = softmax_ce_loss(logits, labels, {0});
    // Stable formula evaluated independently: log(1 + e^{-20}).
    CHECK(res.loss ==
          doctest::Approx(std::log1p(std::exp(-20.0))).epsilon(1e-6));
  }

  SUBCASE("empty mask throws") {
    CHECK_THROWS_AS(softmax_ce_loss(logits, labels, {}), std::invalid_argument);
  }

  SUBCASE("grad is zero outside mask, weighted softmax-minus-onehot inside") {
    logits(0, 0) = 1.0;
    logits(0, 1) = -1.0;
    const LossResult res = softmax_ce_loss(logits, labels, {0}, {2.0, 1.0});
    CHECK(res.grad(1, 0) == 0.0);
    CHECK(res.grad(1, 1) == 0.0);
    const double p1 = 1.0 / (1.0 + std::exp(2.0));
    CHECK(res.grad(0, 0) == doctest::Approx(2.0 * ((1.0 - p1) - 1.0)));
    CHECK(res.grad(0, 1) == doctest::Approx(2.0 * p1));
  }
}

TEST_CASE("softmax cross-entropy permutation invariance") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed * 31 + 7);
    const int n = rng.uniform_int(5, 120);
    DenseMatrix logits = random_matrix(n, 2, rng, 4.0);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int& y : labels) y = rng.uniform_int(0, 1);
    std::vector<int> mask;
    for (int i = 0; i < n; ++i) {
      if (rng.uniform() < 0.6) mask.push_back(i);
    }
    if (mask.empty()) mask.push_back(0);

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    rng.shuffle(perm);

    DenseMatrix plogits(n, 2);
    std::vector<int> plabels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const int pi = perm[static_cast<std::size_t>(i)];
      plogits(pi, 0) = logits(i, 0);
      plogits(pi, 1) = logits(i, 1);
      plabels[static_cast<std::size_t>(pi)] =
          labels[static_cast<std::size_t>(i)];
    }
    std::vector<int> pmask;
    for (int node : mask) pmask.push_back(perm[static_cast<std::size_t>(node)]);
    std::sort(pmask.begin(), pmask.end());

    const LossResult a = softmax_ce_loss(logits, labels, mask);
    const LossResult b = softmax_ce_loss(plogits, plabels, pmask);
    CHECK(std::abs(a.loss - b.loss) <= 1e-12);
    for (int node : mask) {
      const int pi = perm[static_cast<std::size_t>(node)];
      CHECK(a.grad(node, 0) == b.grad(pi, 0));
      CHECK(a.grad(node, 1) == b.grad(pi, 1));
    }
  }
}

TEST_CASE("mse loss") {
  DenseMatrix a(1, 1, 1.0);
  DenseMatrix b(1, 1, 3.0);
  const LossResult res = mse_loss(a, b);
  CHECK(res.loss == doctest::Approx(4.0));
  CHECK(res.grad(0, 0) == doctest::Approx(-4.0));

  const LossResult zero = mse_loss(b, b);
  CHECK(zero.loss == 0.0);

  DenseMatrix c(2, 1);
  CHECK_THROWS_AS(mse_loss(a, c), std::invalid_argument);
}

TEST_CASE("adam step") {
  SUBCASE("zero gradient is the identity on parameters") {
    ParamStore params;
    params.add("w", DenseMatrix(2, 2, 1.5));
    AdamState state;
    adam_step(params, state);
    CHECK(state.step() == 1);
    for (double v : params.value("w").values) CHECK(v == 1.5);
  }

  SUBCASE("first step moves by ~learning rate in the gradient direction") {
    ParamStore params;
    params.add("w", DenseMatrix(1, 2, 0.0));
    params.grad("w")(0, 0) = 0.3;
    params.grad("w")(0, 1) = -2.0;
    AdamState state;
    adam_step(params, state);
    CHECK(params.value("w")(0, 0) ==
          doctest::Approx(-0.01).epsilon(1e-6));
    CHECK(params.value("w")(0, 1) == doctest::Approx(0.01).epsilon(1e-6));
    // Gradients zeroed after the step.
    CHECK(params.grad("w")(0, 0) == 0.0);
  }

  SUBCASE("identical stores and grads update identically") {
    auto make = [] {
      ParamStore p;
      p.add("a", DenseMatrix(2, 3, 0.25));
      p.add("b", DenseMatrix(1, 4, -1.0));
      return p;
    };
    ParamStore p1 = make();
    ParamStore p2 = make();
    for (auto* p : {&p1, &p2}) {
      double g = 0.1;
      for (double& v : p->grad("a").values) v = (g += 0.05);
      for (double& v : p->grad("b").values) v = (g -= 0.02);
    }
    AdamState s1;
    AdamState s2;
    adam_step(p1, s1);
    adam_step(p2, s2);
    CHECK(p1 == p2);
  }
}

TEST_CASE("glorot init stays within the stated bound") {
  ParamStore params;
  params.add("w1", DenseMatrix(7, 5));
  params.add("w2", DenseMatrix(5, 2));
  glorot_init(params, 99);
  for (const std::string& name : params.names()) {
    const DenseMatrix& w = params.value(name);
    const double bound = std::sqrt(6.0 / (w.rows + w.cols));
    for (double v : w.values) {
      CHECK(std::abs(v) <= bound);
    }
  }
  ParamStore again;
  again.add("w1", DenseMatrix(7, 5));
  again.add("w2", DenseMatrix(5, 2));
  glorot_init(again, 99);
  CHECK(params == again);
}

TEST_CASE("grad_check validates its own preconditions") {
  ParamStore params;
  params.add("w", DenseMatrix(1, 2, 1.0));
  const LossFn quadratic = [](ParamStore& p, bool with_grads) {
    const DenseMatrix& w = p.value("w");
    double loss = 0.0;
    for (double v : w.values) loss += v * v;
    if (with_grads) {
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        p.grad("w").values[i] = 2.0 * w.values[i];
      }
    }
    return loss;
  };
  CHECK_THROWS_AS(grad_check(quadratic, params, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(grad_check(quadratic, params, 1e-2), std::invalid_argument);
}

TEST_CASE("grad_check on a quadratic") {
  ParamStore params;
  DenseMatrix w(1, 2);
  w(0, 0) = 1.0;
  w(0, 1) = 2.0;
  params.add("w", std::move(w));
  const LossFn quadratic = [](ParamStore& p, bool with_grads) {
    const DenseMatrix& w = p.value("w");
    double loss = 0.0;
    for (double v : w.values) loss += v * v;
    if (with_grads) {
      for (std::size_t i = 0; i < w.values.size(); ++i) {
        p.grad("w").values[i] = 2.0 * w.values[i];
      }
    }
    return loss;
  };
  CHECK(grad_check(quadratic, params, 1e-5) < 1e-6);
}

TEST_CASE("param store serialization round-trips bit-for-bit") {
  ParamStore params;
  Rng rng(4242);
  params.add("enc1", random_matrix(3, 4, rng, 2.0));
  params.add("dec", random_matrix(4, 3, rng, 0.01));
  const std::string path = "params_roundtrip_test.txt";
  save_params(params, path);
  const ParamStore loaded = load_params(path);
  CHECK(params == loaded);
  std::remove(path.c_str());
}

TEST_CASE("param store rejects duplicates and unknown names") {
  ParamStore params;
  params.add("w", DenseMatrix(1, 1));
  CHECK_THROWS_AS(params.add("w", DenseMatrix(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(params.value("missing"), std::invalid_argument);
}
