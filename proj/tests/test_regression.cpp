#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causalsort/anm.hpp"
#include "causalsort/errors.hpp"
#include "causalsort/regression.hpp"
#include "oracles.hpp"

using namespace causalsort;

namespace {

Eigen::MatrixXd random_matrix(int n, int p, Rng& rng) {
  Eigen::MatrixXd x(n, p);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < p; ++c) x(i, c) = rng.gaussian();
  return x;
}

}  // namespace

TEST_CASE("ols: exact linear target") {
  const int n = 50;
  Rng rng(1);
  Eigen::MatrixXd x = random_matrix(n, 1, rng);
  Eigen::VectorXd y = 2.0 * x.col(0).array() + 1.0;
  const LinearFit fit = ols_fit(x, y);
  CHECK(fit.coefficients(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.rss < 1e-20);
  CHECK_FALSE(fit.rank_deficient);
}

TEST_CASE("ols: empty predictor set fits the mean") {
  Eigen::VectorXd y(4);
  y << 1, 2, 3, 6;
  const LinearFit fit = ols_fit(Eigen::MatrixXd(4, 0), y);
  CHECK(fit.coefficients.size() == 0);
  CHECK(fit.intercept == doctest::Approx(3.0));
  CHECK(fit.rss == doctest::Approx((y.array() - 3.0).square().sum()));
}

TEST_CASE("ols matches normal equations on random systems") {
  Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 30 + rng.uniform_int(100);
    const int p = 1 + rng.uniform_int(6);
    const Eigen::MatrixXd x = random_matrix(n, p, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.gaussian() + 0.5 * x(i, 0);

    std::vector<std::vector<double>> xv(n, std::vector<double>(p));
    std::vector<double> yv(n);
    for (int i = 0; i < n; ++i) {
      yv[i] = y(i);
      for (int c = 0; c < p; ++c) xv[i][c] = x(i, c);
    }
    const oracles::OlsResult expected = oracles::ols_normal_equations(xv, yv);
    const LinearFit fit = ols_fit(x, y);
    CHECK(fit.intercept == doctest::Approx(expected.intercept).epsilon(1e-8));
    for (int c = 0; c < p; ++c) {
      CHECK(fit.coefficients(c) == doctest::Approx(expected.coefficients[c]).epsilon(1e-8));
    }
    CHECK(fit.rss == doctest::Approx(expected.rss).epsilon(1e-8));
  }
}

TEST_CASE("ols residuals orthogonal to predictors and constant") {
  Rng rng(3);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 40 + rng.uniform_int(60);
    const int p = 1 + rng.uniform_int(5);
    const Eigen::MatrixXd x = random_matrix(n, p, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.gaussian();
    const LinearFit fit = ols_fit(x, y);
    Eigen::VectorXd residual =
        y - (x * fit.coefficients).array().matrix() -
        Eigen::VectorXd::Constant(n, fit.intercept);
    CHECK(std::abs(residual.sum()) <= 1e-8 * residual.norm() * std::sqrt(double(n)));
    for (int c = 0; c < p; ++c) {
      CHECK(std::abs(x.col(c).dot(residual)) <=
            1e-8 * x.col(c).norm() * residual.norm() + 1e-12);
    }
  }
}

TEST_CASE("ols: rank-deficient designs get the min-norm solution, flagged") {
  Rng rng(4);
  const int n = 50;
  Eigen::MatrixXd x(n, 2);
  x.col(0) = random_matrix(n, 1, rng);
  x.col(1) = 2.0 * x.col(0);  // duplicated direction
  Eigen::VectorXd y = 3.0 * x.col(0);
  const LinearFit fit = ols_fit(x, y);
  CHECK(fit.rank_deficient);
  CHECK(fit.rss < 1e-18);
  // fitted values still reproduce the target
  Eigen::VectorXd pred = x * fit.coefficients;
  pred.array() += fit.intercept;
  CHECK((pred - y).cwiseAbs().maxCoeff() < 1e-9);
  // min-norm solution: among b0 + 2*b1 = 3, the one with smallest norm
  CHECK(fit.coefficients(0) == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(fit.coefficients(1) == doctest::Approx(1.2).epsilon(1e-6));
}

TEST_CASE("ols precondition") {
  Eigen::MatrixXd x(3, 2);
  x.setRandom();
  Eigen::VectorXd y(3);
  y.setRandom();
  CHECK_THROWS_AS(ols_fit(x, y), std::invalid_argument);
}

TEST_CASE("r_squared: exact fit, independence, affine invariance") {
  Rng rng(5);
  Dataset data;
  const int n = 1000;
  data.values.resize(n, 3);
  for (int i = 0; i < n; ++i) {
    data.values(i, 0) = rng.gaussian();
    data.values(i, 1) = rng.gaussian();
    data.values(i, 2) = 2 * data.values(i, 0) - data.values(i, 1);
  }
  const std::vector<int> s01{0, 1};
  CHECK(r_squared(data, 2, s01) == doctest::Approx(1.0).epsilon(1e-12));

  // independent target: R^2 is small, on the order of |S|/n
  const std::vector<int> s0{0};
  const double r2_indep = r_squared(data, 1, s0);
  CHECK(r2_indep >= 0.0);
  CHECK(r2_indep < 0.02);

  // affine rescaling of columns leaves R^2 unchanged
  Dataset scaled = data;
  scaled.values.col(0) = 13.0 * scaled.values.col(0).array() - 7.0;
  scaled.values.col(2) = 0.03 * scaled.values.col(2).array() + 2.0;
  CHECK(r_squared(scaled, 2, s01) ==
        doctest::Approx(r_squared(data, 2, s01)).epsilon(1e-9));

  CHECK_THROWS_AS(r_squared(data, 0, std::vector<int>{0, 1}), std::invalid_argument);
  Dataset constant = data;
  constant.values.col(1).setConstant(4.2);
  CHECK_THROWS_AS(r_squared(constant, 1, s0), DegenerateColumnError);
}

TEST_CASE("lasso: strong signal is kept, coefficient near truth") {
  Rng rng(6);
  const int n = 500;
  Eigen::MatrixXd x = random_matrix(n, 1, rng);
  Eigen::VectorXd y = 3.0 * x.col(0);
  const LassoFit fit = lasso_path_bic(x, y);
  CHECK(fit.fit.coefficients(0) == doctest::Approx(3.0).epsilon(0.01));
}

TEST_CASE("lasso: BIC prefers the empty model on independent noise") {
  int empty_selected = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(100 + seed);
    const int n = 1000, p = 5;
    const Eigen::MatrixXd x = random_matrix(n, p, rng);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y(i) = rng.gaussian();
    const LassoFit fit = lasso_path_bic(x, y);
    if (fit.fit.coefficients.cwiseAbs().maxCoeff() == 0.0) ++empty_selected;
  }
  CHECK(empty_selected >= 19);
}

TEST_CASE("lasso at lambda=0 equals OLS") {
  Rng rng(7);
  const int n = 300, p = 4;
  const Eigen::MatrixXd x = random_matrix(n, p, rng);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = 1.5 * x(i, 0) - 0.7 * x(i, 2) + 0.1 * rng.gaussian();
  }
  const LinearFit ols = ols_fit(x, y);
  const std::vector<double> zero{0.0};
  const auto path = lasso_path(x, y, {}, zero);
  REQUIRE(path.size() == 1);
  for (int c = 0; c < p; ++c) {
    CHECK(path[0].coefficients(c) == doctest::Approx(ols.coefficients(c)).epsilon(1e-6));
  }
  CHECK(path[0].intercept == doctest::Approx(ols.intercept).epsilon(1e-6));
}

TEST_CASE("lasso path: zero at lambda_max, rss nonincreasing, KKT holds") {
  Rng rng(8);
  const int n = 400, p = 6;
  const Eigen::MatrixXd x = random_matrix(n, p, rng);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = 0.8 * x(i, 1) - 1.2 * x(i, 3) + 0.5 * rng.gaussian();
  }
  const auto path = lasso_path(x, y);
  REQUIRE(path.size() == 100);
  CHECK(path.front().coefficients.cwiseAbs().maxCoeff() == 0.0);
  for (size_t k = 1; k < path.size(); ++k) {
    CHECK(path[k].rss <= path[k - 1].rss + 1e-9 * path[k - 1].rss + 1e-12);
  }

  // KKT on the internal standardized scale
  Eigen::MatrixXd xs(n, p);
  Eigen::VectorXd sd(p);
  for (int c = 0; c < p; ++c) {
    const double mean = x.col(c).mean();
    sd(c) = std::sqrt(population_variance(x.col(c)));
    xs.col(c) = (x.col(c).array() - mean) / sd(c);
  }
  const Eigen::VectorXd yc = y.array() - y.mean();
  for (const auto& point : {path[20], path[60], path[99]}) {
    Eigen::VectorXd beta_std(p);
    for (int c = 0; c < p; ++c) beta_std(c) = point.coefficients(c) * sd(c);
    const Eigen::VectorXd residual = yc - xs * beta_std;
    for (int c = 0; c < p; ++c) {
      const double corr = std::abs(xs.col(c).dot(residual)) / n;
      if (point.coefficients(c) == 0.0) {
        CHECK(corr <= point.lambda + 1e-6);
      } else {
        CHECK(corr == doctest::Approx(point.lambda).epsilon(1e-4));
      }
    }
  }
}

TEST_CASE("coordinate descent objective is monotone within a lambda") {
  Rng rng(9);
  const int n = 200, p = 5;
  const Eigen::MatrixXd x = random_matrix(n, p, rng);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = x(i, 0) - 2 * x(i, 4) + rng.gaussian();
  std::vector<double> objective;
  const std::vector<double> lambda{0.05};
  lasso_path(x, y, {}, lambda, &objective);
  REQUIRE(objective.size() >= 2);
  for (size_t k = 1; k < objective.size(); ++k) {
    CHECK(objective[k] <= objective[k - 1] + 1e-12);
  }
}

TEST_CASE("lasso handles constant predictors") {
  Rng rng(10);
  const int n = 100;
  Eigen::MatrixXd x(n, 2);
  x.col(0) = random_matrix(n, 1, rng);
  x.col(1).setConstant(3.0);
  Eigen::VectorXd y = 2.0 * x.col(0);
  const LassoFit fit = lasso_path_bic(x, y);
  CHECK(fit.fit.coefficients(1) == 0.0);
  CHECK(fit.fit.coefficients(0) == doctest::Approx(2.0).epsilon(0.01));
}
