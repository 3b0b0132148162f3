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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "bidauction/random.hpp"
#include "bidauction/stats.hpp"

using namespace bidauction;

TEST_SUITE("stats") {

TEST_CASE("running statistics match the two-pass formulas") {
  Rng rng(1);
  std::vector<double> xs;
  RunningStats s;
  for (int j = 0; j < 1000; ++j) {
    xs.push_back(1e6 + uniform01(rng));
    s.add(xs.back());
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  CHECK(s.mean() == doctest::Approx(mean).epsilon(1e-14));
  CHECK(s.variance() == doctest::Approx(ss / (xs.size() - 1)).epsilon(1e-9));
  CHECK(s.standard_error() == doctest::Approx(std::sqrt(ss / (xs.size() - 1) / xs.size())).epsilon(1e-9));
  CHECK(s.count() == 1000);

  RunningStats a, b;
  for (std::size_t j = 0; j < xs.size(); ++j) (j < 300 ? a : b).add(xs[j]);
  a.merge(b);
  CHECK(a.mean() == doctest::Approx(s.mean()).epsilon(1e-14));
  CHECK(a.variance() == doctest::Approx(s.variance()).epsilon(1e-9));

  RunningStats one;
  one.add(3.0);
  CHECK(one.variance() == 0.0);
  CHECK(one.standard_error() == 0.0);
  RunningStats none;
  none.merge(one);
  CHECK(none.mean() == 3.0);
}

TEST_CASE("kolmogorov distribution") {
  CHECK(kolmogorov_survival(1.358) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(kolmogorov_survival(1.628) == doctest::Approx(0.01).epsilon(0.02));
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(5.0) < 1e-20);
}

TEST_CASE("one- and two-sample statistics") {
  const std::vector<double> grid{0.1, 0.3, 0.5, 0.7, 0.9};
  CHECK(ks_statistic(grid, [](double x) { return x; }) == doctest::Approx(0.1));
  CHECK(ks_statistic(grid, grid) == 0.0);
  const std::vector<double> shifted{1.1, 1.3};
  CHECK(ks_statistic(grid, shifted) == doctest::Approx(1.0));
  Rng rng(2);
  std::vector<double> u, v;
  for (int j = 0; j < 5000; ++j) {
    u.push_back(uniform01(rng));
    v.push_back(uniform01(rng));
  }
  CHECK(ks_p_value(ks_statistic(u, [](double x) { return x; }), u.size()) > 0.01);
  CHECK(ks_p_value(ks_statistic(u, v), u.size(), v.size()) > 0.01);
  std::vector<double> squared;
  for (double x : u) squared.push_back(x * x);
  CHECK(ks_p_value(ks_statistic(squared, [](double x) { return x; }), squared.size()) < 1e-6);
}

}  // TEST_SUITE
