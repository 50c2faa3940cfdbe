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

#ifndef QUADEST_STATS_HPP_
#define QUADEST_STATS_HPP_

namespace quadest {

struct Interval {
  double lo;
  double hi;

  bool contains(double value) const { return lo <= value && value <= hi; }
};

double normal_quantile(double p);
double chi2_quantile(double p, double dof);

// Where the sample variance of n iid normal draws should fall, given the
// true variance.
Interval chi2_acceptance_interval(double true_variance, long long n,
                                  double confidence);

// Confidence interval for the true variance given the sample variance.
Interval chi2_variance_interval(double sample_variance, long long n,
                                double confidence);

// mean +- z * sqrt(variance / n).
Interval normal_mean_interval(double mean, double variance, long long n,
                              double confidence);

// Streaming mean/variance accumulator (Welford).
class RunningStats {
 public:
  void add(double value);
  long long count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; requires count >= 2.
  double variance() const;

 private:
  long long count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace quadest

#endif  // QUADEST_STATS_HPP_
