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
#pragma once

#include <numbers>

namespace trapsim {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Cyclic frequency (Hz) to angular frequency (rad/s).
constexpr double hz_to_rad(double hz) noexcept { return kTwoPi * hz; }
constexpr double rad_to_hz(double rad) noexcept { return rad / kTwoPi; }

}  // namespace trapsim
