#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causalsort/anm.hpp"
#include "causalsort/errors.hpp"
#include "causalsort/regression.hpp"
#include "oracles.hpp"

using namespace causalsort;

namespace {

AnmInstance random_instance(int d, int m, std::uint64_t seed,
                            NoiseFamily family = NoiseFamily::kGaussian) {
  Rng rng(seed);
  const Dag g = sample_er_dag(d, m, rng);
  const NoiseSpec noise{family, SigmaDist::Uniform(0.5, 2.0)};
  return sample_instance(g, WeightDist{0.5, 2.0}, noise, rng);
}

}  // namespace

TEST_CASE("sample_instance: support and ranges") {
  Rng rng(1);
  const Dag edgeless(4);
  const NoiseSpec noise{NoiseFamily::kGaussian, SigmaDist::Uniform(0.5, 2.0)};
  const AnmInstance empty = sample_instance(edgeless, WeightDist{0.5, 1.0}, noise, rng);
  CHECK(empty.weights.cwiseAbs().maxCoeff() == 0.0);
  CHECK(empty.sigma.minCoeff() > 0.0);

  const Dag g = sample_er_dag(20, 40, rng);
  const AnmInstance inst = sample_instance(g, WeightDist{0.5, 1.0}, noise, rng);
  int nonzero = 0;
  for (int s = 0; s < 20; ++s) {
    for (int t = 0; t < 20; ++t) {
      const double w = inst.weights(s, t);
      if (w != 0.0) {
        ++nonzero;
        CHECK(g.has_edge(s, t));
        CHECK(std::abs(w) >= 0.5);
        CHECK(std::abs(w) <= 1.0);
      }
    }
  }
  CHECK(nonzero == 40);
}

TEST_CASE("weight magnitudes are uniform on the support (chi-square)") {
  Rng rng(2);
  const WeightDist dist{0.5, 2.0};
  const int kDraws = 100000, kBins = 10;
  std::vector<int> bins(kBins, 0);
  int negative = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double w = dist.sample(rng);
    if (w < 0) ++negative;
    const double mag = std::abs(w);
    REQUIRE(mag >= 0.5);
    REQUIRE(mag <= 2.0);
    const int b = std::min(kBins - 1, static_cast<int>((mag - 0.5) / 1.5 * kBins));
    ++bins[b];
  }
  const double expected = static_cast<double>(kDraws) / kBins;
  double chi2 = 0;
  for (const int c : bins) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 27.88);  // chi-square df=9 at alpha=0.001
  // fair signs: binomial sd is ~158 here
  CHECK(std::abs(negative - kDraws / 2) < 5 * 158);
}

TEST_CASE("sample_data: pure noise covariance") {
  Rng rng(3);
  const Dag edgeless(3);
  const NoiseSpec noise{NoiseFamily::kGaussian, SigmaDist::Uniform(0.5, 2.0)};
  const AnmInstance inst = sample_instance(edgeless, WeightDist{0.5, 2.0}, noise, rng);
  const int n = 200000;
  const Dataset data = sample_data(inst, n, rng);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const double cov = (data.values.col(a).array() - data.values.col(a).mean())
                             .cwiseProduct(data.values.col(b).array() -
                                           data.values.col(b).mean())
                             .sum() /
                         n;
      const double expected = a == b ? inst.sigma(a) * inst.sigma(a) : 0.0;
      CHECK(std::abs(cov - expected) < 0.05);
    }
  }
}

TEST_CASE("sample_data: unit chain variance grows linearly") {
  // all weights 1, all sigma 1: Var(X_p) = p + 1
  const int p = 4, n = 10000;
  AnmInstance inst{Dag::chain(p + 1), Eigen::MatrixXd::Zero(p + 1, p + 1),
                   Eigen::VectorXd::Ones(p + 1), NoiseFamily::kGaussian};
  for (int k = 0; k < p; ++k) inst.weights(k, k + 1) = 1.0;
  Rng rng(4);
  const Dataset data = sample_data(inst, n, rng);
  for (int t = 0; t <= p; ++t) {
    const double var = population_variance(data.values.col(t));
    const double expected = t + 1;
    // variance estimator sd is roughly Var * sqrt(2/n)
    const double se = expected * std::sqrt(2.0 / n);
    CHECK(std::abs(var - expected) < 5 * se);
  }
}

TEST_CASE("empirical covariance converges to analytic_covariance") {
  const AnmInstance inst = random_instance(5, 7, 5);
  const Eigen::MatrixXd expected = analytic_covariance(inst);
  Rng rng(6);
  const int n = 1000000;
  const Dataset data = sample_data(inst, n, rng);
  Eigen::MatrixXd centered = data.values.rowwise() - data.values.colwise().mean();
  const Eigen::MatrixXd emp = centered.transpose() * centered / n;
  const double scale = expected.cwiseAbs().maxCoeff();
  CHECK(((emp - expected).cwiseAbs().maxCoeff() / scale) < 0.02);
}

TEST_CASE("standardize: basic and idempotent") {
  Dataset data;
  data.values.resize(3, 1);
  data.values << 2, 4, 6;
  const Dataset std1 = standardize(data);
  CHECK(std::abs(std1.values.col(0).mean()) < 1e-15);
  CHECK(std::abs(population_variance(std1.values.col(0)) - 1.0) < 1e-12);

  const Dataset std2 = standardize(std1);
  CHECK((std2.values - std1.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("standardize: degenerate column names the column") {
  Dataset data;
  data.values.resize(3, 2);
  data.values << 1, 5, 2, 5, 3, 5;
  data.names = {"a", "b"};
  try {
    standardize(data);
    FAIL("expected DegenerateColumnError");
  } catch (const DegenerateColumnError& e) {
    CHECK(e.column() == 1);
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("r_squared unchanged by standardization") {
  const AnmInstance inst = random_instance(5, 6, 7);
  Rng rng(8);
  const Dataset data = sample_data(inst, 500, rng);
  const Dataset std_data = standardize(data);
  const std::vector<int> rest{1, 2, 3, 4};
  CHECK(r_squared(data, 0, rest) == doctest::Approx(r_squared(std_data, 0, rest))
                                        .epsilon(1e-9));
}

TEST_CASE("analytic_covariance: diagonal for empty graphs, SPD in general") {
  Rng rng(9);
  const Dag edgeless(3);
  const NoiseSpec noise{NoiseFamily::kGaussian, SigmaDist::Uniform(0.5, 2.0)};
  const AnmInstance inst = sample_instance(edgeless, WeightDist{0.5, 2.0}, noise, rng);
  const Eigen::MatrixXd cov = analytic_covariance(inst);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(cov(a, b) == doctest::Approx(a == b ? inst.sigma(a) * inst.sigma(a) : 0.0));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const AnmInstance random = random_instance(6, 9, seed);
    const Eigen::MatrixXd c = analytic_covariance(random);
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Eigen::LLT<Eigen::MatrixXd>(c).info() == Eigen::Success);
  }
}

TEST_CASE("analytic_covariance matches the equal-CEV model closed form") {
  const double sqrt2 = std::sqrt(2.0);
  const double a = 1.0 / sqrt2;
  const double w3 = 1.0 / std::sqrt(4.0 + 2.0 * sqrt2);
  const double b = (1.0 + a) * w3;
  const double denom4 = std::sqrt(6.0 + 4.0 * a + 8.0 * b);
  const double c = (1.0 + a + b) / denom4;
  const double e = (1.0 + 2.0 * b) / denom4;

  const std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {1, 2},
                                               {0, 3}, {1, 3}, {2, 3}};
  AnmInstance inst{Dag(4, edges), Eigen::MatrixXd::Zero(4, 4), Eigen::VectorXd(4),
                   NoiseFamily::kGaussian};
  inst.weights(0, 1) = a;
  inst.weights(0, 2) = inst.weights(1, 2) = w3;
  inst.weights(0, 3) = inst.weights(1, 3) = inst.weights(2, 3) = 1.0 / denom4;
  inst.sigma << 1.0, a, a, a;  // noise variances 1, 1/2, 1/2, 1/2

  Eigen::MatrixXd expected(4, 4);
  expected << 1, a, b, c,
              a, 1, b, c,
              b, b, 1, e,
              c, c, e, 1;
  CHECK((analytic_covariance(inst) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("expected_log_abs_weight: reference values and quadrature") {
  CHECK(expected_log_abs_weight({0.5, 2.0}) == doctest::Approx(0.16).epsilon(0.05));
  CHECK(expected_log_abs_weight({0.1, 0.5}) == doctest::Approx(-1.29).epsilon(0.01));
  Rng rng(10);
  for (int k = 0; k < 20; ++k) {
    const double b = rng.uniform(0.05, 1.5);
    const double a = b + rng.uniform(0.01, 3.0);
    CHECK(std::abs(expected_log_abs_weight({b, a}) -
                   oracles::elogv_quadrature(b, a)) < 1e-8);
  }
}

TEST_CASE("solve_alpha_for_target") {
  // inverse property
  Rng rng(11);
  for (int k = 0; k < 25; ++k) {
    const double b = rng.uniform(0.05, 1.0);
    const double target = rng.uniform(std::log(b) + 0.05, 2.5);
    const double a = solve_alpha_for_target(target, b);
    CHECK(expected_log_abs_weight({b, a}) == doctest::Approx(target).epsilon(1e-6));
  }
  // the reference setting: target ~0.155 at b=0.5 gives a ~2
  const double a = solve_alpha_for_target(0.15524530093324215, 0.5);
  CHECK(a == doctest::Approx(2.0).epsilon(1e-6));
  // unachievable: limit as a->b is log(b)
  CHECK_THROWS_AS(solve_alpha_for_target(std::log(0.5) - 0.1, 0.5),
                  std::invalid_argument);
}

TEST_CASE("chain variance lower bound") {
  const std::vector<double> ones{1.0, 1.0};
  CHECK(chain_variance_lower_bound(ones, 1.0) == 0.0);

  const std::vector<double> twos{2.0, 2.0};
  CHECK(chain_variance_lower_bound(twos, 1.0) == doctest::Approx(2 * std::log(2.0)));
  // exact terminal variance with unit sigmas: 4*(4*1+1)+1 = 21
  const std::vector<double> sigmas{1.0, 1.0, 1.0};
  CHECK(chain_variances(twos, sigmas).back() == doctest::Approx(21.0));
  CHECK(chain_variances(twos, sigmas).back() > chain_variance_lower_bound(twos, 1.0));

  const std::vector<double> zero{0.0};
  CHECK_THROWS_AS(chain_variance_lower_bound(zero, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(chain_variance_lower_bound({}, 1.0), std::invalid_argument);
}

TEST_CASE("lower bound holds on 1000 random chains (p=30)") {
  const WeightDist wdist{0.5, 2.0};
  const SigmaDist sdist = SigmaDist::Uniform(0.5, 2.0);
  Rng rng(12);
  const int p = 30;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> weights(p), sigmas(p + 1);
    for (int k = 0; k < p; ++k) weights[k] = wdist.sample(rng);
    for (int k = 0; k <= p; ++k) sigmas[k] = sdist.sample(rng);
    const std::vector<double> variances = chain_variances(weights, sigmas);
    double log_sum = 0;
    const double s0sq = sigmas[0] * sigmas[0];
    for (int t = 1; t <= p; ++t) {
      log_sum += std::log(std::abs(weights[t - 1]));
      CHECK(s0sq * log_sum <= variances[t]);
    }
  }
}

TEST_CASE("noise moments: sample sd equals phi for both families") {
  for (const NoiseFamily family : {NoiseFamily::kGaussian, NoiseFamily::kUniform}) {
    for (const double phi : {0.5, 2.0}) {
      NoiseSpec spec{family, SigmaDist::Uniform(0.5, 2.0)};
      Rng rng(13 + static_cast<int>(family));
      const int n = 1000000;
      double sum = 0, sum_sq = 0;
      for (int i = 0; i < n; ++i) {
        const double x = spec.sample_noise(phi, rng);
        sum += x;
        sum_sq += x * x;
      }
      const double mean = sum / n;
      const double sd = std::sqrt(sum_sq / n - mean * mean);
      CHECK(std::abs(mean) < 0.01 * phi);
      CHECK(std::abs(sd - phi) < 0.01 * phi);
    }
  }
}

TEST_CASE("uniform noise stays inside its support") {
  NoiseSpec spec{NoiseFamily::kUniform, SigmaDist::Uniform(0.5, 2.0)};
  Rng rng(14);
  const double phi = 1.3;
  const double bound = std::sqrt(3.0) * phi;
  for (int i = 0; i < 10000; ++i) {
    CHECK(std::abs(spec.sample_noise(phi, rng)) <= bound);
  }
}

TEST_CASE("distribution parameter validation") {
  CHECK_THROWS_AS((WeightDist{-0.1, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((WeightDist{1.0, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SigmaDist::Uniform(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SigmaDist::Uniform(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SigmaDist::Exponential(0.0), std::invalid_argument);
  Rng rng(15);
  CHECK_THROWS_AS(sample_data(random_instance(3, 2, 1), 1, rng), std::invalid_argument);
}

TEST_CASE("exponential sigma: rate parameterization (mean 1/rate)") {
  const SigmaDist dist = SigmaDist::Exponential(1.54);
  Rng rng(16);
  double sum = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += dist.sample(rng);
  CHECK(sum / n == doctest::Approx(1.0 / 1.54).epsilon(0.02));
}
