#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qnnbench/baselines/serialize.hpp"
#include "qnnbench/core/errors.hpp"
#include "qnnbench/core/random.hpp"

using namespace qnnbench;
using namespace qnnbench::baselines;

namespace {

// Small integer grid so that distance and split ties actually happen.
Matrix grid_matrix(Rng &rng, std::size_t rows, std::size_t cols, int levels) {
  Matrix X(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      X(r, c) = static_cast<double>(rng.below(static_cast<std::uint64_t>(levels)));
  return X;
}

Matrix uniform_matrix(Rng &rng, std::size_t rows, std::size_t cols) {
  Matrix X(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      X(r, c) = rng.uniform();
  return X;
}

void same_tree(const DecisionTreeRegressor &tree, int node, const oracle::TreeOracleNode &ref) {
  const auto &n = tree.nodes()[static_cast<std::size_t>(node)];
  CHECK(n.n_samples == ref.n);
  CHECK(n.value == doctest::Approx(ref.value).epsilon(1e-12));
  REQUIRE(n.is_leaf() == ref.leaf);
  if (ref.leaf)
    return;
  CHECK(static_cast<std::size_t>(n.feature) == ref.feature);
  CHECK(n.threshold == ref.threshold);
  same_tree(tree, n.left, *ref.left);
  same_tree(tree, n.right, *ref.right);
}

} // namespace

TEST_CASE("minkowski distance") {
  const std::vector<double> a{0, 0, 0}, b{3, 4, 0};
  CHECK(minkowski_distance(a, b, 2.0) == 5.0);
  CHECK(minkowski_distance(a, b, 1.0) == doctest::Approx(7.0));
  CHECK(minkowski_distance(a, a, 2.0) == 0.0);
}

TEST_CASE("knn neighbours match brute force") {
  Rng rng(101);
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 10 + rng.below(40);
    const auto X = inst % 2 ? grid_matrix(rng, n, 4, 3) : uniform_matrix(rng, n, 4);
    std::vector<double> y(n);
    for (auto &v : y)
      v = rng.uniform(-5, 5);
    KnnRegressor knn;
    knn.fit(X, y);
    for (int q = 0; q < 10; ++q) {
      const auto query = inst % 2 ? grid_matrix(rng, 1, 4, 3) : uniform_matrix(rng, 1, 4);
      const auto got = knn.neighbors(query.row(0));
      const auto want = oracle::knn_indices(X, query.row(0), 5, 2.0);
      CHECK(got == want);
      double mean = 0.0;
      for (auto i : want)
        mean += y[i];
      CHECK(knn.predict(query.row(0)) == doctest::Approx(mean / 5.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("knn edge cases") {
  const Matrix X{{0.0}, {1.0}, {2.0}, {3.0}};
  const std::vector<double> y{1, 2, 3, 10};
  KnnRegressor one(1);
  one.fit(X, y);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(one.predict(X.row(i)) == y[i]);
  KnnRegressor all(4);
  all.fit(X, y);
  const double q[1] = {100.0};
  CHECK(all.predict(q) == 4.0);
  // equidistant neighbours: the lower training index wins
  KnnRegressor two(1);
  two.fit(X, y);
  const double mid[1] = {0.5};
  CHECK(two.neighbors(mid) == std::vector<std::size_t>{0});

  KnnRegressor five;
  CHECK_THROWS_AS(five.predict(q), std::logic_error);
  CHECK_THROWS_AS(five.fit(X, y), std::invalid_argument);
  CHECK_THROWS_AS(KnnRegressor(0), std::invalid_argument);
  CHECK_THROWS_AS(KnnRegressor(3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(one.fit(X, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("tree structure matches exhaustive search") {
  Rng rng(202);
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 5 + rng.below(60);
    const auto X = grid_matrix(rng, n, 4, 2 + static_cast<int>(rng.below(6)));
    std::vector<double> y(n);
    for (auto &v : y)
      v = static_cast<double>(rng.below(7));
    DecisionTreeRegressor tree;
    tree.fit(X, y);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    const auto ref = oracle::grow_tree(X, y, idx);
    same_tree(tree, 0, *ref);
  }
}

TEST_CASE("tree trivial cases") {
  DecisionTreeRegressor t;
  const double q[2] = {0, 0};
  CHECK_THROWS_AS(t.predict(q), std::logic_error);
  CHECK_THROWS_AS(t.fit(Matrix(), {}), std::invalid_argument);

  t.fit(Matrix{{1, 2}}, std::vector<double>{4.5});
  CHECK(t.nodes().size() == 1);
  CHECK(t.predict(q) == 4.5);

  // identical rows cannot be split, the leaf averages
  t.fit(Matrix{{1, 1}, {1, 1}, {1, 1}}, std::vector<double>{1, 2, 6});
  CHECK(t.n_leaves() == 1);
  CHECK(t.predict(q) == 3.0);

  // distinct rows fit exactly
  Rng rng(9);
  const auto X = uniform_matrix(rng, 40, 3);
  std::vector<double> y(40);
  for (auto &v : y)
    v = rng.normal();
  t.fit(X, y);
  const auto p = t.predict(X);
  for (std::size_t i = 0; i < 40; ++i)
    CHECK(p[i] == y[i]);
  CHECK(t.depth() >= 1);

  // threshold sits halfway
  t.fit(Matrix{{0.0}, {1.0}}, std::vector<double>{0, 1});
  CHECK(t.nodes()[0].threshold == 0.5);
}

TEST_CASE("ols matches normal equations") {
  Rng rng(303);
  for (int inst = 0; inst < 50; ++inst) {
    const std::size_t n = 8 + rng.below(100);
    const auto X = uniform_matrix(rng, n, 4);
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r)
      y[r] = 0.3 + X(r, 0) - 2.0 * X(r, 3) + 0.1 * rng.normal();
    const auto m = ols_fit(X, y);
    const auto ref = oracle::ols_normal_equations(X, y);
    CHECK(std::abs(m.intercept - static_cast<double>(ref[0])) <= 1e-8);
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(m.weights[j] - static_cast<double>(ref[j + 1])) <= 1e-8);
    CHECK(m.rank == 4);
    CHECK_FALSE(m.rank_deficient);

    // residuals are orthogonal to the intercept and every column
    const auto pred = m.predict(X);
    double s0 = 0.0;
    std::vector<double> sj(4, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double e = y[r] - pred[r];
      s0 += e;
      for (std::size_t j = 0; j < 4; ++j)
        sj[j] += e * X(r, j);
    }
    CHECK(std::abs(s0) <= 1e-9);
    for (double v : sj)
      CHECK(std::abs(v) <= 1e-9);
  }
}

TEST_CASE("ols special designs") {
  Matrix X(20, 1);
  std::vector<double> y(20);
  for (std::size_t i = 0; i < 20; ++i) {
    X(i, 0) = static_cast<double>(i);
    y[i] = 2.0 * static_cast<double>(i) + 1.0;
  }
  const auto line = ols_fit(X, y);
  CHECK(line.weights[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(line.intercept == doctest::Approx(1.0).epsilon(1e-12));

  Matrix C(20, 2);
  for (std::size_t i = 0; i < 20; ++i) {
    C(i, 0) = static_cast<double>(i);
    C(i, 1) = 7.0;
  }
  const auto cst = ols_fit(C, y);
  CHECK(cst.rank_deficient);
  CHECK(cst.rank == 1);
  CHECK(std::abs(cst.weights[1]) <= 1e-12);
  CHECK(cst.weights[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cst.intercept == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(ols_fit(Matrix(2, 2), std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ols_fit(X, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST_CASE("baseline json round trips") {
  Rng rng(4);
  const auto X = uniform_matrix(rng, 30, 4);
  std::vector<double> y(30);
  for (auto &v : y)
    v = rng.uniform();
  const auto Q = uniform_matrix(rng, 10, 4);
  auto reparse = [](const nlohmann::json &j) { return nlohmann::json::parse(j.dump()); };

  KnnRegressor knn;
  knn.fit(X, y);
  CHECK(knn_from_json(reparse(to_json(knn))).predict(Q) == knn.predict(Q));

  DecisionTreeRegressor tree;
  tree.fit(X, y);
  const auto tree2 = tree_from_json(reparse(to_json(tree)));
  CHECK(tree2.predict(Q) == tree.predict(Q));
  CHECK(tree2.nodes().size() == tree.nodes().size());

  const auto lin = ols_fit(X, y);
  CHECK(linear_from_json(reparse(to_json(lin))).predict(Q) == lin.predict(Q));

  auto bad = to_json(knn);
  bad["type"] = "dtr";
  CHECK_THROWS_AS(knn_from_json(bad), ConfigError);
  CHECK_THROWS_AS(tree_from_json(nlohmann::json::object()), ConfigError);
  CHECK_THROWS_AS(linear_from_json(nlohmann::json{{"type", "ols"}}), ConfigError);
}
