#include <algorithm>
#include <cmath>
#include <doctest.h>

#include "bcl/metrics.hpp"
#include "bcl/rng.hpp"

#include "oracles.hpp"

using namespace bcl;

TEST_CASE("fuse_scores") {
  const std::vector<double> homo{0.2, 0.9, 0.4};
  const std::vector<double> hete{0.8, 0.1, 0.4};

  SUBCASE("alpha 1 returns the homo scores bitwise") {
    const FusedScore f = fuse_scores(1.0, homo, hete);
    CHECK(f.score_final == homo);
  }
  SUBCASE("alpha 0 returns the hete scores bitwise") {
    const FusedScore f = fuse_scores(0.0, homo, hete);
    CHECK(f.score_final == hete);
  }
  SUBCASE("hand-computed midpoint") {
    const FusedScore f = fuse_scores(0.5, {0.2}, {0.8});
    CHECK(f.score_final[0] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("alpha 0.5 is symmetric under swapping directions") {
    const FusedScore a = fuse_scores(0.5, homo, hete);
    const FusedScore b = fuse_scores(0.5, hete, homo);
    CHECK(a.score_final == b.score_final);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(fuse_scores(0.5, {0.1}, {0.1, 0.2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(fuse_scores(1.5, homo, hete), std::invalid_argument);
    CHECK_THROWS_AS(fuse_scores(-0.1, homo, hete), std::invalid_argument);
  }
  SUBCASE("output stays within [0, 1] for probability inputs") {
    Rng rng(8);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> a(30);
      std::vector<double> b(30);
      for (double& v : a) v = rng.uniform();
      for (double& v : b) v = rng.uniform();
      const FusedScore f = fuse_scores(rng.uniform(), a, b);
      for (double v : f.score_final) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("roc_auc worked examples") {
  CHECK(roc_auc({0.9, 0.1}, {1, 0}) == 1.0);
  CHECK(roc_auc({0.4, 0.4, 0.4}, {1, 0, 1}) == 0.5);
  CHECK(roc_auc({0.8, 0.7, 0.6, 0.5}, {1, 0, 1, 0}) == 0.75);
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {0, 0}), std::invalid_argument);
}

TEST_CASE("roc_auc equals the brute-force pairwise oracle exactly") {
  Rng rng(404);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = rng.uniform_int(2, 200);
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<int> labels(static_cast<std::size_t>(n));
    // Alternate continuous scores with tie-heavy discrete ones.
    const bool tie_heavy = rep % 2 == 0;
    for (int i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] =
          tie_heavy ? 0.1 * rng.uniform_int(0, 4) : rng.uniform();
      labels[static_cast<std::size_t>(i)] = rng.uniform_int(0, 1);
    }
    labels[0] = 0;
    labels[static_cast<std::size_t>(n - 1)] = 1;
    CHECK(roc_auc(scores, labels) ==
          bcl::testing::brute_force_auc(scores, labels));
  }
}

TEST_CASE("roc_auc is invariant under strictly increasing transforms") {
  Rng rng(505);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = rng.uniform_int(4, 120);
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = 0.25 * rng.uniform_int(0, 7);
      labels[static_cast<std::size_t>(i)] = rng.uniform_int(0, 1);
    }
    labels[0] = 0;
    labels[static_cast<std::size_t>(n - 1)] = 1;

    const double base = roc_auc(scores, labels);
    const double a = rng.uniform(0.5, 3.0);
    const double b = rng.uniform(-2.0, 2.0);
    std::vector<double> affine(scores);
    for (double& s : affine) s = a * s + b;
    std::vector<double> tanh_mapped(scores);
    for (double& s : tanh_mapped) s = std::tanh(s);
    CHECK(roc_auc(affine, labels) == base);
    CHECK(roc_auc(tanh_mapped, labels) == base);
  }
}

TEST_CASE("macro_f1 worked examples") {
  SUBCASE("perfect predictions") {
    CHECK(macro_f1({0.9, 0.1, 0.8, 0.2}, {1, 0, 1, 0}) == 1.0);
  }
  SUBCASE("all-normal predictions against labels [0,0,0,1]") {
    CHECK(macro_f1({0.1, 0.2, 0.3, 0.4}, {0, 0, 0, 1}) ==
          doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("threshold 1.0 forces the all-normal prediction") {
    CHECK(macro_f1({0.9, 0.8, 0.7, 1.0}, {0, 0, 0, 1}, 1.0) ==
          doctest::Approx(3.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("single-class labels throw") {
    CHECK_THROWS_AS(macro_f1({0.5, 0.6}, {1, 1}), std::invalid_argument);
  }
}

TEST_CASE("macro_f1 range and the diagonal-confusion identity") {
  Rng rng(606);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = rng.uniform_int(4, 100);
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = rng.uniform();
      labels[static_cast<std::size_t>(i)] = rng.uniform_int(0, 1);
    }
    labels[0] = 0;
    labels[static_cast<std::size_t>(n - 1)] = 1;
    const double f1 = macro_f1(scores, labels, 0.5);
    CHECK(f1 >= 0.0);
    CHECK(f1 <= 1.0);

    bool diagonal = true;
    for (int i = 0; i < n; ++i) {
      const int pred = scores[static_cast<std::size_t>(i)] > 0.5 ? 1 : 0;
      if (pred != labels[static_cast<std::size_t>(i)]) diagonal = false;
    }
    CHECK((f1 == 1.0) == diagonal);
  }
}
