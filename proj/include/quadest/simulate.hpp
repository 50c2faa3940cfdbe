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

#ifndef QUADEST_SIMULATE_HPP_
#define QUADEST_SIMULATE_HPP_

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "quadest/encoding.hpp"
#include "quadest/schemes.hpp"
#include "quadest/stats.hpp"

namespace quadest {

struct ExperimentConfig {
  Scheme scheme;
  Eigen::VectorXd true_params;
  long long shots = 1;
  long long trials = 1;
  std::uint64_t seed = 0;
};

// Monte Carlo summary. Per-shot variances are pooled over trials * shots
// draws; trial_variances holds one per-trial variance row per trial when
// shots >= 2. qcrb_values are the single-repetition bounds, so
// saturation_ratios == 1 means the bound is met shot for shot.
struct EstimationResult {
  Eigen::VectorXd mean_estimates;
  Eigen::VectorXd empirical_variances;
  bool variance_defined = false;
  Eigen::VectorXd qcrb_values;
  Eigen::VectorXd saturation_ratios;
  std::vector<Interval> mean_ci99;
  std::vector<Interval> variance_ci99;
  Eigen::MatrixXd trial_variances;
  long long shots = 0;
  long long trials = 0;
  std::uint64_t seed = 0;
  std::string rng_algorithm;
};

// Encode, apply the network, draw homodyne samples, decode, and compare
// the per-shot spread against the quantum bound. Trial t uses the RNG
// stream (seed, t), so results never depend on scheduling.
EstimationResult run_experiment(const ExperimentConfig& config);

// Mode-by-mode homodyne without the receiver network: x on one mode for
// the first parameter, p on the other for the second, rescaled by the
// encoding coefficients.
EstimationResult run_individual_baseline(double transmittance,
                                         const Eigen::Vector2d& params,
                                         long long shots, std::uint64_t seed);

struct CurvePoint {
  double transmittance;
  double ratio_analytic;
  double ratio_empirical;
  double ci_low;
  double ci_high;
};

// Individual-over-joint variance ratio across a transmittance grid,
// analytic and Monte Carlo, with 99% intervals on the empirical column.
std::vector<CurvePoint> enhancement_curve(const std::vector<double>& t_grid,
                                          long long shots,
                                          std::uint64_t seed);

// Input-state quadratures of the optimal two-mode family across a
// transmittance grid. Both parameters must be nonzero.
std::vector<EllipsePoint> ellipse_trace(double a, double b,
                                        const std::vector<double>& t_grid);

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& rows);
void write_ellipse_csv(std::ostream& out,
                       const std::vector<EllipsePoint>& rows);

nlohmann::json result_to_json(const EstimationResult& result);

}  // namespace quadest

#endif  // QUADEST_SIMULATE_HPP_
