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

#include "trapsim/spin_state.hpp"

namespace trapsim {
namespace {

TEST(SpinIndexing, FirstIonIsMostSignificant) {
  const std::vector<int> pmm = {1, -1, -1};
  EXPECT_EQ(index_of(pmm), 3u);
  const std::vector<int> mpp = {-1, 1, 1};
  EXPECT_EQ(index_of(mpp), 4u);
  EXPECT_EQ(spin_of(4, 3, 0), -1);
  EXPECT_EQ(spin_of(4, 3, 1), 1);
  EXPECT_EQ(ion_bit(3, 0), 4u);
  const std::vector<int> bad = {1, 0};
  EXPECT_THROW(index_of(bad), ConfigError);
}

TEST(SpinIndexing, RoundTrip) {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
      std::vector<int> spins(n);
      for (std::size_t i = 0; i < n; ++i) spins[i] = spin_of(s, n, i);
      EXPECT_EQ(index_of(spins), s);
    }
  }
}

TEST(ControlPatterns, CanonicalOrder) {
  const auto p = all_control_patterns(2);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(pattern_signs(p[0]), "--");
  EXPECT_EQ(pattern_signs(p[1]), "-+");
  EXPECT_EQ(pattern_signs(p[2]), "+-");
  EXPECT_EQ(pattern_signs(p[3]), "++");
  EXPECT_EQ(pattern_tag(p[1]), "mp");
  EXPECT_EQ(all_control_patterns(0).size(), 1u);
  EXPECT_EQ(all_control_patterns(5).size(), 32u);
}

TEST(ControlPatterns, Parsing) {
  EXPECT_EQ(parse_pattern("-+"), (ControlPattern{-1, 1}));
  EXPECT_EQ(parse_pattern("mp"), (ControlPattern{-1, 1}));
  EXPECT_EQ(parse_pattern("\xE2\x88\x92+"), (ControlPattern{-1, 1}));
  EXPECT_TRUE(parse_pattern("").empty());
  EXPECT_THROW(parse_pattern("-x"), ConfigError);
}

TEST(ControlPatterns, FullConfigurationInsertsTarget) {
  const ControlPattern c = {-1, 1};
  EXPECT_EQ(full_configuration(0, 1, c), (std::vector<int>{1, -1, 1}));
  EXPECT_EQ(full_configuration(1, -1, c), (std::vector<int>{-1, -1, 1}));
  EXPECT_EQ(full_configuration(2, 1, c), (std::vector<int>{-1, 1, 1}));
  EXPECT_THROW(full_configuration(3, 1, c), ConfigError);
}

TEST(SpinState, BasisAndValidation) {
  const std::vector<int> spins = {1, -1, -1};
  const auto s = SpinState::basis(spins);
  EXPECT_EQ(s.ions(), 3u);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
  EXPECT_EQ(s[3], Complex(1.0));
  EXPECT_THROW(SpinState(2, Amplitudes(3)), ConfigError);
  EXPECT_THROW(SpinState(0, Amplitudes(1)), ConfigError);
  EXPECT_THROW(SpinState(kMaxIons + 1, Amplitudes{}), ConfigError);
}

TEST(TargetProbabilities, ProductState) {
  const std::vector<int> spins = {1, -1, -1};
  const auto [plus, minus] = target_probabilities(SpinState::basis(spins), 0);
  EXPECT_DOUBLE_EQ(plus, 1.0);
  EXPECT_DOUBLE_EQ(minus, 0.0);
}

TEST(TargetProbabilities, EqualSuperposition) {
  Amplitudes a(8);
  const std::vector<int> p = {1, -1, -1}, m = {-1, -1, -1};
  a[index_of(p)] = 1.0 / std::sqrt(2.0);
  a[index_of(m)] = Complex(0.0, 1.0 / std::sqrt(2.0));
  const SpinState s(3, a);
  const auto [plus, minus] = target_probabilities(s, 0);
  EXPECT_NEAR(plus, 0.5, 1e-15);
  EXPECT_NEAR(minus, 0.5, 1e-15);
  EXPECT_NEAR(plus + minus, 1.0, 1e-9);
  const auto [c_plus, c_minus] = target_probabilities(s, 1);
  EXPECT_NEAR(c_plus, 0.0, 1e-15);
  EXPECT_NEAR(c_minus, 1.0, 1e-15);
  EXPECT_THROW(target_probabilities(s, 3), ConfigError);
}

}  // namespace
}  // namespace trapsim
