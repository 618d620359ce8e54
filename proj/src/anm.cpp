#include "causalsort/anm.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "causalsort/errors.hpp"

namespace causalsort {

void WeightDist::validate() const {
  if (!(0 < lo && lo < hi)) {
    throw std::invalid_argument("WeightDist: need 0 < lo < hi, got lo=" +
                                std::to_string(lo) + " hi=" + std::to_string(hi));
  }
}

NoiseFamily noise_family_from_name(const std::string& name) {
  if (name == "gaussian") return NoiseFamily::kGaussian;
  if (name == "uniform") return NoiseFamily::kUniform;
  throw std::invalid_argument("unknown noise family '" + name + "'");
}

std::string noise_family_name(NoiseFamily family) {
  return family == NoiseFamily::kGaussian ? "gaussian" : "uniform";
}

SigmaDist SigmaDist::Uniform(double lo, double hi) {
  SigmaDist s;
  s.kind = Kind::kUniform;
  s.lo = lo;
  s.hi = hi;
  s.validate();
  return s;
}

SigmaDist SigmaDist::Exponential(double rate) {
  SigmaDist s;
  s.kind = Kind::kExponential;
  s.rate = rate;
  s.validate();
  return s;
}

void SigmaDist::validate() const {
  if (kind == Kind::kUniform) {
    if (!(0 < lo && lo <= hi)) {
      throw std::invalid_argument("SigmaDist: uniform bounds need 0 < lo <= hi");
    }
  } else {
    if (!(rate > 0)) throw std::invalid_argument("SigmaDist: exponential rate must be > 0");
  }
}

double SigmaDist::sample(Rng& rng) const {
  if (kind == Kind::kUniform) return rng.uniform(lo, hi);
  return rng.exponential(rate);
}

double NoiseSpec::sample_noise(double phi, Rng& rng) const {
  if (family == NoiseFamily::kGaussian) return phi * rng.gaussian();
  constexpr double kSqrt3 = 1.7320508075688772935;
  return phi * rng.uniform(-kSqrt3, kSqrt3);
}

AnmInstance sample_instance(const Dag& g, const WeightDist& wdist,
                            const NoiseSpec& noise, Rng& rng) {
  wdist.validate();
  noise.sigma_dist.validate();
  const int d = g.node_count();
  AnmInstance inst{g, Eigen::MatrixXd::Zero(d, d), Eigen::VectorXd::Zero(d),
                   noise.family};
  for (const auto& [s, t] : g.edges()) inst.weights(s, t) = wdist.sample(rng);
  for (int t = 0; t < d; ++t) {
    double sd = noise.sigma_dist.sample(rng);
    // exponential draws can be arbitrarily close to 0; keep sigma positive
    while (sd <= 0) sd = noise.sigma_dist.sample(rng);
    inst.sigma(t) = sd;
  }
  return inst;
}

Dataset sample_data(const AnmInstance& inst, int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_data: need n >= 2");
  const int d = inst.node_count();
  NoiseSpec spec;
  spec.family = inst.noise_family;

  Dataset data;
  data.values.resize(n, d);
  for (int t = 0; t < d; ++t) {
    const double phi = inst.sigma(t);
    for (int i = 0; i < n; ++i) data.values(i, t) = spec.sample_noise(phi, rng);
  }
  for (const int t : inst.dag.topological_order()) {
    for (const int s : inst.dag.parents(t)) {
      data.values.col(t) += inst.weights(s, t) * data.values.col(s);
    }
  }
  return data;
}

std::string Dataset::column_name(int c) const {
  if (!names.empty()) return names[c];
  return "x" + std::to_string(c);
}

double population_variance(const Eigen::Ref<const Eigen::VectorXd>& x) {
  const double mean = x.mean();
  return (x.array() - mean).square().sum() / static_cast<double>(x.size());
}

Dataset standardize(const Dataset& data) {
  Dataset out = data;
  const int d = out.d();
  for (int c = 0; c < d; ++c) {
    const double mean = out.values.col(c).mean();
    const double var = population_variance(out.values.col(c));
    if (!(var > 0)) throw DegenerateColumnError(c, data.column_name(c));
    out.values.col(c) = (out.values.col(c).array() - mean) / std::sqrt(var);
  }
  return out;
}

Eigen::MatrixXd analytic_covariance(const AnmInstance& inst) {
  const int d = inst.node_count();
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(d, d) - inst.weights.transpose();
  const Eigen::MatrixXd m = a.partialPivLu().inverse();
  Eigen::MatrixXd cov = m * inst.sigma.array().square().matrix().asDiagonal() *
                        m.transpose();
  return ((cov + cov.transpose()) / 2.0).eval();  // kill asymmetric rounding
}

double expected_log_abs_weight(const WeightDist& wdist) {
  wdist.validate();
  const double a = wdist.hi, b = wdist.lo;
  return (a * std::log(a) - a - b * std::log(b) + b) / (a - b);
}

double solve_alpha_for_target(double target, double inner_bound) {
  if (!(inner_bound > 0)) {
    throw std::invalid_argument("solve_alpha_for_target: inner bound must be > 0");
  }
  if (!std::isfinite(target) || target <= std::log(inner_bound)) {
    throw std::invalid_argument(
        "solve_alpha_for_target: target " + std::to_string(target) +
        " unachievable (limit as a->b is log b = " +
        std::to_string(std::log(inner_bound)) + ")");
  }
  auto value = [&](double a) {
    return expected_log_abs_weight({inner_bound, a});
  };
  double lo = inner_bound * (1 + 1e-12);
  double hi = std::max(2 * inner_bound, std::exp(target + 1.0) + inner_bound);
  while (value(hi) < target) {
    hi *= 2;
    if (!std::isfinite(hi)) {
      throw std::invalid_argument("solve_alpha_for_target: target not reached");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = value(mid);
    if (std::abs(v - target) <= 1e-9) return mid;
    (v < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double chain_variance_lower_bound(std::span<const double> weights, double sigma0) {
  if (weights.empty()) {
    throw std::invalid_argument("chain_variance_lower_bound: empty weight sequence");
  }
  if (!(sigma0 > 0)) {
    throw std::invalid_argument("chain_variance_lower_bound: sigma0 must be > 0");
  }
  double sum = 0;
  for (const double w : weights) {
    if (w == 0) {
      throw std::invalid_argument(
          "chain_variance_lower_bound: zero weight makes the chain degenerate");
    }
    sum += std::log(std::abs(w));
  }
  return sigma0 * sigma0 * sum;
}

std::vector<double> chain_variances(std::span<const double> weights,
                                    std::span<const double> sigmas) {
  if (sigmas.size() != weights.size() + 1) {
    throw std::invalid_argument("chain_variances: need one more sigma than weights");
  }
  std::vector<double> var(sigmas.size());
  var[0] = sigmas[0] * sigmas[0];
  for (size_t t = 1; t < sigmas.size(); ++t) {
    var[t] = weights[t - 1] * weights[t - 1] * var[t - 1] + sigmas[t] * sigmas[t];
  }
  return var;
}

}  // namespace causalsort
