// Copyright 2026 The quadest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quadest/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "quadest/fisher.hpp"
#include "quadest/rng.hpp"

namespace quadest {

namespace {

std::string num17(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

nlohmann::json to_json_array(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

nlohmann::json intervals_to_json(const std::vector<Interval>& intervals) {
  nlohmann::json out = nlohmann::json::array();
  for (const Interval& iv : intervals) out.push_back({iv.lo, iv.hi});
  return out;
}

// Shared tail: fold pooled statistics into an EstimationResult.
EstimationResult finish_result(const std::vector<RunningStats>& pooled,
                               Eigen::VectorXd qcrb_values, long long shots,
                               long long trials, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(pooled.size());
  EstimationResult result;
  result.mean_estimates.resize(n);
  result.empirical_variances = Eigen::VectorXd::Zero(n);
  result.qcrb_values = std::move(qcrb_values);
  result.saturation_ratios = Eigen::VectorXd::Zero(n);
  result.shots = shots;
  result.trials = trials;
  result.seed = seed;
  result.rng_algorithm = CounterRng::kAlgorithm;

  const long long count = pooled.front().count();
  result.variance_defined = count >= 2;
  for (Eigen::Index i = 0; i < n; ++i) {
    result.mean_estimates[i] = pooled[static_cast<size_t>(i)].mean();
  }
  if (result.variance_defined) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double variance = pooled[static_cast<size_t>(i)].variance();
      result.empirical_variances[i] = variance;
      result.saturation_ratios[i] = variance / result.qcrb_values[i];
      result.mean_ci99.push_back(
          normal_mean_interval(result.mean_estimates[i], variance, count,
                               0.99));
      result.variance_ci99.push_back(
          chi2_variance_interval(variance, count, 0.99));
    }
  }
  return result;
}

}  // namespace

EstimationResult run_experiment(const ExperimentConfig& config) {
  const int n = config.scheme.encoding.modes();
  if (config.true_params.size() != n) {
    throw std::invalid_argument("parameter count must match scheme size");
  }
  if (config.shots < 1 || config.trials < 1) {
    throw std::invalid_argument("shots and trials must be at least 1");
  }
  Eigen::VectorXd bounds = qcrb(qfim(config.scheme.encoding), 1);

  const QuadratureVector output =
      network_output(config.scheme, config.true_params);
  std::vector<RunningStats> pooled(static_cast<size_t>(n));
  std::vector<std::vector<RunningStats>> per_trial(
      static_cast<size_t>(config.trials),
      std::vector<RunningStats>(static_cast<size_t>(n)));

  for (long long trial = 0; trial < config.trials; ++trial) {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(trial));
    for (long long shot = 0; shot < config.shots; ++shot) {
      const std::vector<double> samples =
          homodyne_sample(output, config.scheme.readout, rng);
      const Eigen::VectorXd estimates = decode(
          config.scheme,
          Eigen::Map<const Eigen::VectorXd>(samples.data(), n));
      for (int i = 0; i < n; ++i) {
        pooled[static_cast<size_t>(i)].add(estimates[i]);
        per_trial[static_cast<size_t>(trial)][static_cast<size_t>(i)].add(
            estimates[i]);
      }
    }
  }

  EstimationResult result = finish_result(pooled, std::move(bounds),
                                          config.shots, config.trials,
                                          config.seed);
  if (config.shots >= 2) {
    result.trial_variances.resize(config.trials, n);
    for (long long trial = 0; trial < config.trials; ++trial) {
      for (int i = 0; i < n; ++i) {
        result.trial_variances(trial, i) =
            per_trial[static_cast<size_t>(trial)][static_cast<size_t>(i)]
                .variance();
      }
    }
  } else {
    result.trial_variances.resize(0, n);
  }
  return result;
}

EstimationResult run_individual_baseline(double transmittance,
                                         const Eigen::Vector2d& params,
                                         long long shots,
                                         std::uint64_t seed) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  if (shots < 1) throw std::invalid_argument("shot count must be at least 1");
  const QuadratureVector encoded =
      encode(optimal_two_mode_encoding(transmittance), params);

  // The stronger arm reads x for the first parameter; the other arm's p
  // carries the second, with a sign flip on the T >= 1/2 side.
  const int measured = transmittance >= 0.5 ? 0 : 1;
  const int other = 1 - measured;
  const double coef = transmittance >= 0.5
                          ? std::sqrt(2.0 * transmittance)
                          : std::sqrt(2.0 * (1.0 - transmittance));
  const double p_sign = transmittance >= 0.5 ? -1.0 : 1.0;

  CounterRng rng(seed);
  std::vector<RunningStats> pooled(2);
  for (long long shot = 0; shot < shots; ++shot) {
    const double xs =
        rng.normal(encoded.x(measured), kQuadratureNoiseVariance);
    const double ps = rng.normal(encoded.p(other), kQuadratureNoiseVariance);
    pooled[0].add(xs / coef);
    pooled[1].add(p_sign * ps / coef);
  }

  EstimationResult result = finish_result(
      pooled, Eigen::Vector2d::Constant(0.25), shots, 1, seed);
  result.trial_variances.resize(0, 2);
  if (shots >= 2) {
    result.trial_variances.resize(1, 2);
    result.trial_variances.row(0) = result.empirical_variances.transpose();
  }
  return result;
}

std::vector<CurvePoint> enhancement_curve(const std::vector<double>& t_grid,
                                          long long shots,
                                          std::uint64_t seed) {
  if (shots < 2) {
    throw std::invalid_argument("curve needs at least two shots per point");
  }
  CounterRng seeder(seed);
  const double z = normal_quantile(0.995);
  const double se_log =
      std::sqrt(2.0 / static_cast<double>(shots - 1));

  std::vector<CurvePoint> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    ExperimentConfig config{two_mode_scheme(t), Eigen::Vector2d(1.0, 1.0), shots,
                            1, seeder.next_u64()};
    const EstimationResult joint = run_experiment(config);
    const EstimationResult base = run_individual_baseline(
        t, Eigen::Vector2d(1.0, 1.0), shots, seeder.next_u64());
    const double ratio =
        (base.empirical_variances[0] / joint.empirical_variances[0] +
         base.empirical_variances[1] / joint.empirical_variances[1]) /
        2.0;
    rows.push_back(CurvePoint{t, enhancement_ratio(t), ratio,
                              ratio * std::exp(-z * se_log),
                              ratio * std::exp(z * se_log)});
  }
  return rows;
}

std::vector<EllipsePoint> ellipse_trace(double a, double b,
                                        const std::vector<double>& t_grid) {
  if (a == 0.0 || b == 0.0) {
    throw std::invalid_argument(
        "parameters a and b must be nonzero for a nondegenerate ellipse");
  }
  return optimal_ellipse_points(a, b, t_grid);
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& rows) {
  out << "T,ratio_analytic,ratio_empirical,ci_low,ci_high\n";
  for (const CurvePoint& row : rows) {
    out << num17(row.transmittance) << ',' << num17(row.ratio_analytic) << ','
        << num17(row.ratio_empirical) << ',' << num17(row.ci_low) << ','
        << num17(row.ci_high) << '\n';
  }
}

void write_ellipse_csv(std::ostream& out,
                       const std::vector<EllipsePoint>& rows) {
  out << "T,x1,p1,x2,p2\n";
  for (const EllipsePoint& row : rows) {
    out << num17(row.transmittance) << ',' << num17(row.x1) << ','
        << num17(row.p1) << ',' << num17(row.x2) << ',' << num17(row.p2)
        << '\n';
  }
}

nlohmann::json result_to_json(const EstimationResult& result) {
  nlohmann::json trials = nlohmann::json::array();
  for (Eigen::Index t = 0; t < result.trial_variances.rows(); ++t) {
    trials.push_back(
        to_json_array(result.trial_variances.row(t).transpose()));
  }
  return {{"mean_estimates", to_json_array(result.mean_estimates)},
          {"empirical_variances", to_json_array(result.empirical_variances)},
          {"variance_defined", result.variance_defined},
          {"qcrb_values", to_json_array(result.qcrb_values)},
          {"saturation_ratios", to_json_array(result.saturation_ratios)},
          {"mean_ci99", intervals_to_json(result.mean_ci99)},
          {"variance_ci99", intervals_to_json(result.variance_ci99)},
          {"trial_variances", std::move(trials)},
          {"shots", result.shots},
          {"trials", result.trials},
          {"seed", result.seed},
          {"rng_algorithm", result.rng_algorithm}};
}

}  // namespace quadest
