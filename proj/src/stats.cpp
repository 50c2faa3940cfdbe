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

#include "quadest/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <stdexcept>

namespace quadest {

namespace {

void check_confidence(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile probability must lie in (0, 1)");
  }
  return boost::math::quantile(boost::math::normal_distribution<>(), p);
}

double chi2_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("quantile probability must lie in (0, 1)");
  }
  if (!(dof > 0.0)) throw std::invalid_argument("dof must be positive");
  return boost::math::quantile(boost::math::chi_squared_distribution<>(dof),
                               p);
}

Interval chi2_acceptance_interval(double true_variance, long long n,
                                  double confidence) {
  check_confidence(confidence);
  if (n < 2) throw std::invalid_argument("need at least two samples");
  const double alpha = 1.0 - confidence;
  const double dof = static_cast<double>(n - 1);
  return Interval{true_variance * chi2_quantile(alpha / 2.0, dof) / dof,
                  true_variance * chi2_quantile(1.0 - alpha / 2.0, dof) / dof};
}

Interval chi2_variance_interval(double sample_variance, long long n,
                                double confidence) {
  check_confidence(confidence);
  if (n < 2) throw std::invalid_argument("need at least two samples");
  const double alpha = 1.0 - confidence;
  const double dof = static_cast<double>(n - 1);
  return Interval{
      dof * sample_variance / chi2_quantile(1.0 - alpha / 2.0, dof),
      dof * sample_variance / chi2_quantile(alpha / 2.0, dof)};
}

Interval normal_mean_interval(double mean, double variance, long long n,
                              double confidence) {
  check_confidence(confidence);
  if (n < 1) throw std::invalid_argument("need at least one sample");
  if (!(variance >= 0.0)) {
    throw std::invalid_argument("variance must be nonnegative");
  }
  const double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
  const double half = z * std::sqrt(variance / static_cast<double>(n));
  return Interval{mean - half, mean + half};
}

void RunningStats::add(double value) {
  ++count_;
  const double delta = value - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (value - mean_);
}

double RunningStats::variance() const {
  if (count_ < 2) {
    throw std::logic_error("variance needs at least two samples");
  }
  return m2_ / static_cast<double>(count_ - 1);
}

}  // namespace quadest
