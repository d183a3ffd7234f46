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

/// \file
/// State vectors in the X-product basis. Ion i (0-based) maps to bit
/// (N-1-i) of the basis index, so ion 0 is the most significant digit; a
/// clear bit is sigma^X = +1 and a set bit is sigma^X = -1.

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trapsim/errors.hpp"

namespace trapsim {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Control configuration: one sign per non-target ion, in ion order.
using ControlPattern = std::vector<int>;

inline constexpr std::size_t kMaxIons = 16;

inline std::size_t ion_bit(std::size_t n_ions, std::size_t ion) noexcept { return std::size_t{1} << (n_ions - 1 - ion); }

/// sigma^X eigenvalue of `ion` in basis configuration `index`.
inline int spin_of(std::size_t index, std::size_t n_ions, std::size_t ion) noexcept {
  return (index & ion_bit(n_ions, ion)) ? -1 : 1;
}

inline std::size_t index_of(std::span<const int> spins) {
  std::size_t index = 0;
  for (int s : spins) {
    if (s != 1 && s != -1) throw ConfigError("spin values must be +1 or -1");
    index = (index << 1) | (s < 0 ? 1u : 0u);
  }
  return index;
}

/// Inserts the target sign into a control pattern to form a full configuration.
inline std::vector<int> full_configuration(std::size_t target, int target_sign, std::span<const int> controls) {
  if (target > controls.size()) throw ConfigError("target index out of range");
  std::vector<int> spins(controls.begin(), controls.end());
  spins.insert(spins.begin() + static_cast<std::ptrdiff_t>(target), target_sign);
  return spins;
}

/// All 2^n control patterns, '-' before '+', first control most significant.
inline std::vector<ControlPattern> all_control_patterns(std::size_t n_controls) {
  std::vector<ControlPattern> out;
  const std::size_t count = std::size_t{1} << n_controls;
  for (std::size_t k = 0; k < count; ++k) {
    ControlPattern p(n_controls);
    for (std::size_t c = 0; c < n_controls; ++c) p[c] = (k >> (n_controls - 1 - c)) & 1u ? 1 : -1;
    out.push_back(std::move(p));
  }
  return out;
}

/// "+-" rendering, e.g. {-1, 1} -> "-+".
inline std::string pattern_signs(std::span<const int> p) {
  std::string s;
  for (int v : p) s += v > 0 ? '+' : '-';
  return s;
}

/// File-name friendly rendering, e.g. {-1, 1} -> "mp".
inline std::string pattern_tag(std::span<const int> p) {
  std::string s;
  for (int v : p) s += v > 0 ? 'p' : 'm';
  return s;
}

/// Accepts '+'/'p' and '-'/'m' (and the UTF-8 minus sign).
inline ControlPattern parse_pattern(std::string_view text) {
  ControlPattern p;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+' || c == 'p') {
      p.push_back(1);
    } else if (c == '-' || c == 'm') {
      p.push_back(-1);
    } else if (text.substr(i, 3) == "\xE2\x88\x92") {
      p.push_back(-1);
      i += 2;
    } else {
      throw ConfigError("invalid character in sign pattern: '" + std::string(text) + "'");
    }
  }
  return p;
}

class SpinState {
 public:
  SpinState() = default;
  SpinState(std::size_t n_ions, Amplitudes amplitudes) : n_(n_ions), amp_(std::move(amplitudes)) {
    if (n_ions < 1 || n_ions > kMaxIons) throw ConfigError("unsupported number of ions");
    if (amp_.size() != (std::size_t{1} << n_ions)) throw ConfigError("amplitude vector has wrong length");
  }

  /// Product state |s_1, ..., s_N> in the X basis.
  static SpinState basis(std::span<const int> spins) {
    const std::size_t n = spins.size();
    Amplitudes a(std::size_t{1} << n);
    a[index_of(spins)] = 1.0;
    return SpinState(n, std::move(a));
  }

  std::size_t ions() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amp_.size(); }
  const Amplitudes& amplitudes() const noexcept { return amp_; }
  Amplitudes& amplitudes() noexcept { return amp_; }
  const Complex& operator[](std::size_t i) const { return amp_[i]; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return s;
  }

 private:
  std::size_t n_ = 0;
  Amplitudes amp_;
};

/// Marginal probabilities (P(+), P(-)) of the target spin in the X basis.
inline std::pair<double, double> target_probabilities(const SpinState& state, std::size_t target) {
  if (target >= state.ions()) throw ConfigError("target index out of range");
  const std::size_t bit = ion_bit(state.ions(), target);
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t s = 0; s < state.dimension(); ++s) {
    ((s & bit) ? minus : plus) += std::norm(state[s]);
  }
  return {plus, minus};
}

}  // namespace trapsim
