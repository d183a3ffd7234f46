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
#include <vector>

#include <gtest/gtest.h>

#include "trapsim/exchange_model.hpp"
#include "trapsim/units.hpp"

namespace trapsim {
namespace {

constexpr double kOmegaCmHz = 4.63975e6;
constexpr double kRabiHz = 369.7e3;

struct Setup {
  IonCrystal crystal;
  LaserParams laser;
};

Setup cm_setup(std::size_t n, double detuning, bool single_mode = true) {
  IonCrystal crystal(TrapConfig{n, hz_to_rad(kOmegaCmHz), n % 2 ? 0.1 : 0.2092});
  LaserParams laser;
  laser.rabi = hz_to_rad(kRabiHz);
  laser.eta_cm = 0.06;
  laser.mu = detuning * crystal.transverse_frequency(0);
  laser.single_mode = single_mode;
  return {std::move(crystal), laser};
}

// Simpson's rule with an even number of panels.
template <class F>
double simpson(F&& f, double a, double b, std::size_t panels) {
  const double h = (b - a) / static_cast<double>(panels);
  double s = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  return s * h / 3.0;
}

TEST(LambDicke, ScalesWithInverseRootFrequency) {
  const std::vector<double> ratios = {1.0, 0.25, 4.0};
  const auto eta = lamb_dicke_per_mode(0.06, ratios);
  EXPECT_DOUBLE_EQ(eta[0], 0.06);
  EXPECT_DOUBLE_EQ(eta[1], 0.12);
  EXPECT_DOUBLE_EQ(eta[2], 0.03);
  const std::vector<double> bad = {1.0, 0.0};
  EXPECT_THROW(lamb_dicke_per_mode(0.06, bad), PhysicsError);
}

TEST(ExchangeBracket, VanishesAtZero) {
  for (double w : {1.0, 2.9e7, 3.1e7}) EXPECT_EQ(exchange_bracket(w, 1.01 * w, 0.0), 0.0);
  EXPECT_EQ(exchange_bracket_integral(2.9e7, 2.93e7, 0.0), 0.0);
}

TEST(ExchangeBracket, ClosedFormIntegralMatchesQuadrature) {
  const double w = hz_to_rad(kOmegaCmHz);
  const double mu = 1.0095 * w;
  const double t = 5e-5;
  const double numeric = simpson([&](double s) { return exchange_bracket(w, mu, s); }, 0.0, t, 200000);
  EXPECT_NEAR(exchange_bracket_integral(w, mu, t), numeric, 1e-9 * std::abs(numeric));
}

TEST(ExchangeModel, UniformCmCouplingMatchesHandFormula) {
  const auto s = cm_setup(3, 1.0095);
  const ExchangeModel model(s.crystal, s.laser);
  const double w = s.crystal.transverse_frequency(0);
  const double omega = s.laser.rabi;
  const double expected = 0.5 * omega * omega * 0.06 * 0.06 * (1.0 / 3.0) * w / (s.laser.mu * s.laser.mu - w * w);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(model.j0()(i, i), 0.0);
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_NEAR(model.j0()(i, j), expected, 1e-12 * std::abs(expected));
      }
    }
  }
  EXPECT_NEAR(j_rms(model.j0()), expected, 1e-12 * expected);
}

TEST(ExchangeModel, JrmsAtReferenceDetunings) {
  struct Case {
    std::size_t n;
    double mu;
    double hz;
  };
  for (const Case c : {Case{3, 1.0095, 926.019}, Case{4, 1.00713, 926.307}, Case{5, 1.00571, 925.924},
                       Case{6, 1.00476, 925.876}}) {
    const auto s = cm_setup(c.n, c.mu);
    const double got = rad_to_hz(j_rms(ExchangeModel(s.crystal, s.laser).j0()));
    EXPECT_NEAR(got, c.hz, 0.005 * c.hz) << "n_ions=" << c.n;
  }
}

TEST(ExchangeModel, AllModeSumIsSumOfSingleModes) {
  auto s = cm_setup(4, 1.00713, false);
  const ExchangeModel all(s.crystal, s.laser);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    LaserParams lp = s.laser;
    lp.single_mode = true;
    lp.reference_mode = k;
    sum += ExchangeModel(s.crystal, lp).j0();
  }
  EXPECT_LE((all.j0() - sum).cwiseAbs().maxCoeff(), 1e-12 * all.j0().cwiseAbs().maxCoeff());
  EXPECT_EQ(all.terms().size(), 4u);
}

TEST(ExchangeModel, ZigzagCouplingPattern) {
  IonCrystal crystal(TrapConfig{3, hz_to_rad(kOmegaCmHz), 0.1});
  LaserParams lp;
  lp.rabi = hz_to_rad(kRabiHz);
  lp.reference_mode = crystal.zigzag_mode();
  lp.mu = 0.9905 * crystal.transverse_frequency(lp.reference_mode);
  const ExchangeModel model(crystal, lp);
  const auto& j = model.j0();
  const double jj = j(0, 2);
  EXPECT_LT(jj, 0.0);  // red detuned
  EXPECT_NEAR(j(0, 1), -2.0 * jj, 1e-10 * std::abs(jj));
  EXPECT_NEAR(j(1, 2), -2.0 * jj, 1e-10 * std::abs(jj));

  const std::vector<std::vector<int>> patterns = {{-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  const std::vector<double> expected = {4.0, 12.0, -12.0, -4.0};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(delta_for_control(j, 0, patterns[k]), expected[k] * jj, 1e-9 * std::abs(jj));
  }
}

TEST(ExchangeModel, TimeDependentCouplingStartsAtZeroAndAveragesToJ0) {
  const auto s = cm_setup(3, 1.0095);
  const ExchangeModel model(s.crystal, s.laser);
  EXPECT_EQ(model.at(0.0).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(exchange_at(s.crystal, s.laser, 0.0).cwiseAbs().maxCoeff(), 0.0);

  const double t_end = 1.0 / (4.0 * 75.98);
  const double avg = simpson([&](double t) { return model.at(t)(0, 1); }, 0.0, t_end, 400000) / t_end;
  EXPECT_NEAR(avg, model.j0()(0, 1), 0.01 * std::abs(model.j0()(0, 1)));
}

TEST(ExchangeModel, NormalisationVariants) {
  const auto s = cm_setup(4, 1.00713);
  const auto j = static_exchange(s.crystal, s.laser);
  EXPECT_NEAR(j_rms_doubled_pairs(j), std::sqrt(2.0) * j_rms(j), 1e-12 * j_rms(j));
  EXPECT_THROW(j_rms(Eigen::MatrixXd::Zero(1, 1)), ConfigError);
}

TEST(ExchangeModel, UniformDeltaValues) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Constant(3, 3, 2.0);
  j.diagonal().setZero();
  const std::vector<int> mm = {-1, -1}, mp = {-1, 1}, pp = {1, 1};
  EXPECT_DOUBLE_EQ(delta_for_control(j, 0, mm), -16.0);
  EXPECT_DOUBLE_EQ(delta_for_control(j, 0, mp), 0.0);
  EXPECT_DOUBLE_EQ(delta_for_control(j, 0, pp), 16.0);
  const std::vector<int> short_pattern = {1};
  EXPECT_THROW(delta_for_control(j, 0, short_pattern), ConfigError);
  EXPECT_THROW(delta_for_control(j, 3, mm), ConfigError);
}

TEST(ExchangeModel, Errors) {
  auto s = cm_setup(3, 1.0);
  EXPECT_THROW(ExchangeModel(s.crystal, s.laser), ResonanceError);
  s = cm_setup(3, 1.0095);
  EXPECT_THROW(exchange_at(s.crystal, s.laser, -1e-6), ConfigError);
  LaserParams bad = s.laser;
  bad.mu = -1.0;
  EXPECT_THROW(ExchangeModel(s.crystal, bad), ConfigError);
  bad = s.laser;
  bad.rabi_per_ion = {1.0, 2.0};
  EXPECT_THROW(ExchangeModel(s.crystal, bad), ConfigError);
}

TEST(ExchangeModel, WarnsOutsideLambDickeRegime) {
  auto s = cm_setup(3, 1.0095);
  EXPECT_TRUE(ExchangeModel(s.crystal, s.laser).warnings().empty());
  s.laser.eta_cm = 0.4;
  EXPECT_EQ(ExchangeModel(s.crystal, s.laser).warnings().size(), 1u);
}

TEST(ExchangeModel, PerIonRabiFrequencies) {
  auto s = cm_setup(3, 1.0095);
  const double base = ExchangeModel(s.crystal, s.laser).j0()(0, 1);
  s.laser.rabi_per_ion = {s.laser.rabi, 2.0 * s.laser.rabi, s.laser.rabi};
  const auto j = ExchangeModel(s.crystal, s.laser).j0();
  EXPECT_NEAR(j(0, 1), 2.0 * base, 1e-12 * std::abs(base));
  EXPECT_NEAR(j(0, 2), base, 1e-12 * std::abs(base));
}

}  // namespace
}  // namespace trapsim
