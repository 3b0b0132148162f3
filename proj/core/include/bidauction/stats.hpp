// Copyright 2026 The bidauction Authors.
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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bidauction {

/// Welford accumulator.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const;  // sample variance, 0 for fewer than two points
  double standard_error() const;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_survival(double lambda);

/// One-sample KS statistic sup |F_n - F|.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS statistic.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// p-values with the Stephens small-sample correction.
double ks_p_value(double statistic, std::size_t n);
double ks_p_value(double statistic, std::size_t n, std::size_t m);

}  // namespace bidauction
