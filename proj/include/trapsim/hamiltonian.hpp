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
/// Spin Hamiltonian H(t) = sum_{i,j} J_ij(t) X_i X_j - (bx/2) sum_i X_i + by sum_i Y_i
/// acting on X-basis amplitudes.
///
/// Basis phase convention: the X eigenstates are phased so that sigma^Y is
/// real in this basis, <+|Y|-> = <-|Y|+> = -1. With this choice a resonant
/// pi/2 pulse multiplies the flipped component by exactly +i.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trapsim/errors.hpp"
#include "trapsim/spin_state.hpp"

namespace trapsim {

/// X-basis matrix element <s'|Y_i|s> for s' = s with spin i flipped.
inline constexpr double kYElement = -1.0;

enum class FieldScope { all, target };

inline std::string to_string(FieldScope s) { return s == FieldScope::all ? "all" : "target"; }

struct FieldSchedule {
  double bx = 0.0;  ///< longitudinal amplitude, rad/s; enters as -(bx/2) X
  double by = 0.0;  ///< transverse amplitude, rad/s; enters as +by Y
  FieldScope scope = FieldScope::target;
  std::size_t target = 0;
  double duration = 0.0;  ///< seconds

  void validate(std::size_t n_ions) const {
    if (!(duration > 0.0)) throw ConfigError("field duration must be positive");
    if (by < 0.0) throw ConfigError("transverse field must be non-negative");
    if (target >= n_ions) throw ConfigError("target index out of range");
  }

  bool acts_on(std::size_t ion) const noexcept { return scope == FieldScope::all || ion == target; }
};

/// Ising energy sum_{i,j} J_ij s_i s_j of one basis configuration.
inline double ising_energy(const Eigen::MatrixXd& j, std::size_t index) {
  const auto n = static_cast<std::size_t>(j.rows());
  double e = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const int sa = spin_of(index, n, a);
    for (std::size_t b = 0; b < n; ++b) {
      e += j(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * sa * spin_of(index, n, b);
    }
  }
  return e;
}

/// Diagonal of H: Ising energy plus the longitudinal field term, per configuration.
inline std::vector<double> diagonal_energies(const Eigen::MatrixXd& j, const FieldSchedule& field) {
  const auto n = static_cast<std::size_t>(j.rows());
  std::vector<double> e(std::size_t{1} << n);
  for (std::size_t s = 0; s < e.size(); ++s) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (field.acts_on(i)) f += spin_of(s, n, i);
    }
    e[s] = ising_energy(j, s) - 0.5 * field.bx * f;
  }
  return e;
}

/// Returns -i H psi. Matrix free; the diagonal part costs O(N^2 2^N) here
/// because J is an arbitrary matrix, the transverse part O(N 2^N).
inline Amplitudes apply_hamiltonian(const SpinState& state, const Eigen::MatrixXd& j, const FieldSchedule& field) {
  const std::size_t n = state.ions();
  if (static_cast<std::size_t>(j.rows()) != n || static_cast<std::size_t>(j.cols()) != n) {
    throw ConfigError("coupling matrix size does not match the state");
  }
  const auto diag = diagonal_energies(j, field);
  const Complex minus_i(0.0, -1.0);
  Amplitudes out(state.dimension());
  for (std::size_t s = 0; s < out.size(); ++s) {
    Complex h = diag[s] * state[s];
    for (std::size_t i = 0; i < n; ++i) {
      if (field.acts_on(i)) h += field.by * kYElement * state[s ^ ion_bit(n, i)];
    }
    out[s] = minus_i * h;
  }
  return out;
}

}  // namespace trapsim
