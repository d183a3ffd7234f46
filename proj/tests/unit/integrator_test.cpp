// Copyright 2026 The trapsim Authors
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

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "trapsim/bogacki_shampine.hpp"

namespace trapsim {
namespace {

using cvec = std::vector<std::complex<double>>;

auto no_step = [](double, const auto&) {};

TEST(BogackiShampine, ExponentialDecay) {
  std::vector<double> y = {1.0};
  const std::vector<double> samples = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> got;
  const auto st = integrate_bs32<double>([](double, const std::vector<double>& v, std::vector<double>& d) { d[0] = -v[0]; },
                                         y, 0.0, 2.0, samples,
                                         [&](double t, const std::vector<double>& v) {
                                           got.push_back(v[0]);
                                           EXPECT_NEAR(v[0], std::exp(-t), 1e-7);
                                         },
                                         no_step);
  ASSERT_EQ(got.size(), 4u);
  EXPECT_EQ(got.front(), 1.0);
  EXPECT_NEAR(y[0], std::exp(-2.0), 1e-8);
  EXPECT_GT(st.accepted, 0u);
  EXPECT_EQ(st.rhs_evaluations, 2 + 3 * (st.accepted + st.rejected));  // two for the initial step guess
}

TEST(BogackiShampine, ComplexRotationKeepsModulus) {
  const double w = 50.0;
  cvec y = {1.0};
  const std::vector<double> samples = {3.0};
  integrate_bs32<std::complex<double>>(
      [&](double, const cvec& v, cvec& d) { d[0] = std::complex<double>(0.0, w) * v[0]; }, y, 0.0, 3.0, samples,
      [](double, const cvec&) {}, no_step, StepControl{1e-10, 1e-12});
  EXPECT_NEAR(std::abs(y[0] - std::polar(1.0, w * 3.0)), 0.0, 1e-7);
}

TEST(BogackiShampine, DenseOutputBetweenSteps) {
  std::vector<double> y = {0.0};
  std::vector<double> samples;
  for (int k = 0; k <= 100; ++k) samples.push_back(0.02 * k);
  double worst = 0.0;
  integrate_bs32<double>([](double t, const std::vector<double>&, std::vector<double>& d) { d[0] = std::cos(t); }, y,
                         0.0, 2.0, samples,
                         [&](double t, const std::vector<double>& v) { worst = std::max(worst, std::abs(v[0] - std::sin(t))); },
                         no_step, StepControl{1e-9, 1e-12});
  EXPECT_LT(worst, 1e-7);
}

TEST(BogackiShampine, TighterToleranceReducesError) {
  auto run = [](double rtol) {
    std::vector<double> y = {1.0};
    const std::vector<double> samples = {1.0};
    integrate_bs32<double>([](double t, const std::vector<double>& v, std::vector<double>& d) { d[0] = v[0] * std::cos(5 * t); },
                           y, 0.0, 1.0, samples, [](double, const std::vector<double>&) {}, no_step,
                           StepControl{rtol, rtol * 1e-2});
    return std::abs(y[0] - std::exp(std::sin(5.0) / 5.0));
  };
  EXPECT_LT(run(1e-9), run(1e-5));
  EXPECT_LT(run(1e-9), 1e-8);
}

TEST(BogackiShampine, StepCallbackCanAbort) {
  std::vector<double> y = {1.0};
  const std::vector<double> samples = {1.0};
  int steps = 0;
  EXPECT_THROW(integrate_bs32<double>([](double, const std::vector<double>& v, std::vector<double>& d) { d[0] = v[0]; }, y,
                                      0.0, 1.0, samples, [](double, const std::vector<double>&) {},
                                      [&](double, const std::vector<double>&) {
                                        if (++steps == 3) throw std::runtime_error("stop");
                                      }),
               std::runtime_error);
  EXPECT_EQ(steps, 3);
}

TEST(BogackiShampine, BlowUpUnderflowsStep) {
  // y' = y^2, y(0) = 1 blows up at t = 1.
  std::vector<double> y = {1.0};
  const std::vector<double> samples = {2.0};
  EXPECT_THROW(integrate_bs32<double>([](double, const std::vector<double>& v, std::vector<double>& d) { d[0] = v[0] * v[0]; },
                                      y, 0.0, 2.0, samples, [](double, const std::vector<double>&) {}, no_step),
               IntegrationError);
}

TEST(BogackiShampine, StepBudget) {
  std::vector<double> y = {1.0};
  const std::vector<double> samples = {10.0};
  StepControl ctl;
  ctl.max_steps = 5;
  EXPECT_THROW(integrate_bs32<double>([](double t, const std::vector<double>&, std::vector<double>& d) { d[0] = std::cos(40 * t); },
                                      y, 0.0, 10.0, samples, [](double, const std::vector<double>&) {}, no_step, ctl),
               IntegrationError);
}

TEST(BogackiShampine, InputValidation) {
  std::vector<double> y = {1.0};
  const std::vector<double> samples = {};
  auto rhs = [](double, const std::vector<double>&, std::vector<double>& d) { d[0] = 0.0; };
  auto sample = [](double, const std::vector<double>&) {};
  EXPECT_THROW(integrate_bs32<double>(rhs, y, 1.0, 1.0, samples, sample, no_step), ConfigError);
  EXPECT_THROW(integrate_bs32<double>(rhs, y, 0.0, 1.0, samples, sample, no_step, StepControl{0.0, 1e-9}), ConfigError);
}

}  // namespace
}  // namespace trapsim
