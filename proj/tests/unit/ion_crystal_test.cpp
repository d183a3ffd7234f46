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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "trapsim/ion_crystal.hpp"
#include "trapsim/units.hpp"

namespace trapsim {
namespace {

TEST(EquilibriumPositions, SingleIonSitsAtOrigin) {
  const auto u = equilibrium_positions(1);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0], 0.0);
}

TEST(EquilibriumPositions, TwoIonsClosedForm) {
  // u = 1 / (2u)^2  =>  u^3 = 1/4
  const auto u = equilibrium_positions(2);
  const double expected = std::cbrt(0.25);
  EXPECT_NEAR(u[0], -expected, 1e-12);
  EXPECT_NEAR(u[1], expected, 1e-12);
}

TEST(EquilibriumPositions, ThreeIonsClosedForm) {
  // outer ion: u = 1/u^2 + 1/(2u)^2  =>  u^3 = 5/4
  const auto u = equilibrium_positions(3);
  const double expected = std::cbrt(1.25);
  EXPECT_NEAR(u[0], -expected, 1e-12);
  EXPECT_NEAR(u[1], 0.0, 1e-12);
  EXPECT_NEAR(u[2], expected, 1e-12);
}

TEST(EquilibriumPositions, ForceBalanceAndMirrorSymmetry) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto u = equilibrium_positions(n);
    for (std::size_t m = 0; m < n; ++m) {
      double f = -u[m];
      for (std::size_t k = 0; k < n; ++k) {
        if (k == m) continue;
        const double d = u[m] - u[k];
        f += (d > 0 ? 1.0 : -1.0) / (d * d);
      }
      EXPECT_LT(std::abs(f), 1e-10) << "n=" << n << " ion " << m;
      EXPECT_NEAR(u[m], -u[n - 1 - m], 1e-12);
      if (m > 0) {
        EXPECT_GT(u[m], u[m - 1]);
      }
    }
  }
}

TEST(LongitudinalModes, TwoIonsHaveEigenvaluesOneAndThree) {
  const auto modes = longitudinal_modes(equilibrium_positions(2));
  ASSERT_EQ(modes.size(), 2u);
  EXPECT_NEAR(modes[0].ratio, 1.0, 1e-12);
  EXPECT_NEAR(modes[1].ratio, std::sqrt(3.0), 1e-12);
}

TEST(LongitudinalModes, ThreeIonSpectrum) {
  // eigenvalues of the 3-ion stiffness matrix are 1, 3 and 29/5
  const auto modes = longitudinal_modes(equilibrium_positions(3));
  EXPECT_NEAR(modes[0].ratio, 1.0, 1e-12);
  EXPECT_NEAR(modes[1].ratio, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(modes[2].ratio, std::sqrt(29.0 / 5.0), 1e-12);
  EXPECT_NEAR(modes[2].ratio, 2.408, 1e-3);
}

TEST(TransverseModes, TwoIonRockingMode) {
  // T eigenvalues alpha^2 and alpha^2 - 1  =>  ratio sqrt(1 - a^2)
  const double a = 0.2092;
  const auto modes = transverse_modes(equilibrium_positions(2), a);
  ASSERT_EQ(modes.size(), 2u);
  EXPECT_NEAR(modes[0].ratio, 1.0, 1e-12);
  EXPECT_NEAR(modes[1].ratio, std::sqrt(1.0 - a * a), 1e-12);
}

TEST(TransverseModes, ThreeIonZigzag) {
  const auto modes = transverse_modes(equilibrium_positions(3), 0.1);
  ASSERT_EQ(modes.size(), 3u);
  const auto& zz = modes[2];
  EXPECT_NEAR(zz.ratio, std::sqrt(1.0 - 2.4 * 0.01), 1e-12);
  EXPECT_NEAR(zz.ratio, 0.9879, 5e-4);
  const double b = 1.0 / std::sqrt(6.0);
  EXPECT_NEAR(zz.vector[0], b, 1e-12);
  EXPECT_NEAR(zz.vector[1], -2.0 * b, 1e-12);
  EXPECT_NEAR(zz.vector[2], b, 1e-12);
  for (double v : modes[0].vector) EXPECT_NEAR(v, 1.0 / std::sqrt(3.0), 1e-12);
}

TEST(TransverseModes, StiffnessIdentity) {
  for (std::size_t n : {2u, 3u, 5u, 8u}) {
    for (double a : {0.05, 0.1, 0.2092}) {
      const auto u = equilibrium_positions(n);
      const double alpha2 = 1.0 / (a * a);
      const Eigen::MatrixXd l = longitudinal_stiffness(u);
      const Eigen::MatrixXd t = transverse_stiffness(u, a);
      const Eigen::MatrixXd expected =
          (alpha2 + 0.5) * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) -
          0.5 * l;
      EXPECT_LE((t - expected).cwiseAbs().maxCoeff(), 1e-12 * alpha2);
    }
  }
}

TEST(Modes, OrthonormalAndOrdered) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const IonCrystal crystal(TrapConfig{n, hz_to_rad(4.63975e6), n % 2 ? 0.1 : 0.2092});
    for (const auto* family : {&crystal.transverse(), &crystal.longitudinal()}) {
      ASSERT_EQ(family->size(), n);
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          const double dot =
              std::inner_product((*family)[p].vector.begin(), (*family)[p].vector.end(), (*family)[q].vector.begin(), 0.0);
          EXPECT_NEAR(dot, p == q ? 1.0 : 0.0, 1e-10);
        }
        const auto& v = (*family)[p].vector;
        const auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::abs(x) > 1e-9; });
        EXPECT_GT(*first, 0.0);
      }
    }
    for (std::size_t k = 1; k < n; ++k) {
      EXPECT_LT(crystal.transverse()[k].ratio, crystal.transverse()[k - 1].ratio);
      EXPECT_GT(crystal.longitudinal()[k].ratio, crystal.longitudinal()[k - 1].ratio);
    }
  }
}

TEST(IonCrystal, SingleIonHasUnitModes) {
  const IonCrystal crystal(TrapConfig{1, 1.0, 0.1});
  EXPECT_DOUBLE_EQ(crystal.transverse()[0].ratio, 1.0);
  EXPECT_DOUBLE_EQ(crystal.longitudinal()[0].ratio, 1.0);
}

TEST(IonCrystal, Frequencies) {
  const double w = hz_to_rad(4.63975e6);
  const IonCrystal crystal(TrapConfig{3, w, 0.1});
  EXPECT_DOUBLE_EQ(crystal.transverse_frequency(0), w);
  EXPECT_NEAR(rad_to_hz(crystal.longitudinal_frequency(0)), 463975.0, 1e-6);
  EXPECT_EQ(crystal.zigzag_mode(), 2u);
  EXPECT_NEAR(crystal.longitudinal_frequency(2) / w, 0.2408, 1e-4);
}

TEST(IonCrystal, RejectsBadTrap) {
  EXPECT_THROW(IonCrystal(TrapConfig{0, 1.0, 0.1}), ConfigError);
  EXPECT_THROW(IonCrystal(TrapConfig{3, -1.0, 0.1}), ConfigError);
  EXPECT_THROW(IonCrystal(TrapConfig{3, 1.0, 1.5}), ConfigError);
}

TEST(IonCrystal, ZigzagInstabilityIsReported) {
  // 29/5 / 2 - 1/2 exceeds alpha^2 once the trap is nearly isotropic.
  try {
    IonCrystal crystal(TrapConfig{3, 1.0, 0.9});
    FAIL() << "expected an instability";
  } catch (const InstabilityError& e) {
    EXPECT_EQ(e.mode(), 2u);
  }
}

}  // namespace
}  // namespace trapsim
