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
/// Laser-mediated Ising couplings. All couplings are angular frequencies
/// (energy / hbar, rad/s). For each coupled transverse mode nu the model
/// keeps the prefactor
///
///   P^nu_ij = 1/2 Omega_i Omega_j eta_nu^2 b_i^nu b_j^nu / (mu^2 - w_nu^2)
///
/// so that J_ij(t) = sum_nu P^nu_ij g_nu(t) with
/// g_nu(t) = w_nu - w_nu cos(2 mu t) - 2 mu sin(w_nu t) sin(mu t), and the
/// time average J0_ij = sum_nu P^nu_ij w_nu.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trapsim/errors.hpp"
#include "trapsim/ion_crystal.hpp"

namespace trapsim {

struct LaserParams {
  double rabi = 0.0;                ///< uniform Rabi frequency, rad/s
  std::vector<double> rabi_per_ion; ///< optional override, one entry per ion
  double eta_cm = 0.06;             ///< Lamb-Dicke parameter of the transverse CM mode
  double mu = 0.0;                  ///< beatnote, rad/s
  /// Transverse mode the detuning refers to. When `single_mode` is set only
  /// this mode contributes to J; otherwise every transverse mode does.
  std::size_t reference_mode = 0;
  bool single_mode = true;

  double rabi_at(std::size_t ion) const {
    return rabi_per_ion.empty() ? rabi : rabi_per_ion.at(ion);
  }
};

/// eta_nu = eta_cm / sqrt(w_nu / w_cm) at fixed wave-vector difference.
inline std::vector<double> lamb_dicke_per_mode(double eta_cm, std::span<const double> ratios) {
  std::vector<double> out;
  out.reserve(ratios.size());
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    if (!(ratios[k] > 0.0)) {
      throw PhysicsError("mode " + std::to_string(k) + " has non-positive frequency ratio");
    }
    out.push_back(eta_cm / std::sqrt(ratios[k]));
  }
  return out;
}

/// g(t) for one mode.
inline double exchange_bracket(double omega, double mu, double t) noexcept {
  return omega - omega * std::cos(2.0 * mu * t) - 2.0 * mu * std::sin(omega * t) * std::sin(mu * t);
}

/// Closed-form integral of exchange_bracket from 0 to t.
inline double exchange_bracket_integral(double omega, double mu, double t) noexcept {
  return omega * t - omega * std::sin(2.0 * mu * t) / (2.0 * mu) -
         mu * (std::sin((mu - omega) * t) / (mu - omega) - std::sin((mu + omega) * t) / (mu + omega));
}

class ExchangeModel {
 public:
  struct ModeTerm {
    std::size_t mode = 0;
    double omega = 0.0;  ///< rad/s
    double eta = 0.0;
    Eigen::MatrixXd coupling;  ///< P^nu, zero diagonal
  };

  /// Relative guard on |mu^2 - w^2| / w^2.
  static constexpr double kResonanceGuard = 1e-6;

  ExchangeModel(const IonCrystal& crystal, const LaserParams& laser) : laser_(laser), n_(crystal.size()) {
    const auto& modes = crystal.transverse();
    if (!(laser.mu > 0.0)) throw ConfigError("beatnote mu must be positive");
    if (!(laser.eta_cm > 0.0 && laser.eta_cm < 1.0)) throw ConfigError("eta_cm must lie in (0, 1)");
    if (laser.eta_cm > 0.3) warnings_.push_back("eta_cm above 0.3 is outside the Lamb-Dicke regime");
    if (!laser.rabi_per_ion.empty() && laser.rabi_per_ion.size() != n_) {
      throw ConfigError("rabi_per_ion must have one entry per ion");
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (laser.rabi_at(i) < 0.0) throw ConfigError("Rabi frequencies must be non-negative");
    }
    if (laser.reference_mode >= modes.size()) throw ConfigError("reference mode index out of range");

    std::vector<double> ratios;
    for (const auto& m : modes) ratios.push_back(m.ratio);
    const auto etas = lamb_dicke_per_mode(laser.eta_cm, ratios);

    const double mu2 = laser.mu * laser.mu;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const double w = crystal.transverse_frequency(k);
      if (std::abs(mu2 - w * w) < kResonanceGuard * w * w) {
        throw ResonanceError("beatnote is resonant with transverse mode " + std::to_string(k));
      }
    }

    j0_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t k = 0; k < modes.size(); ++k) {
      if (laser.single_mode && k != laser.reference_mode) continue;
      ModeTerm term;
      term.mode = k;
      term.omega = crystal.transverse_frequency(k);
      term.eta = etas[k];
      const double scale = 0.5 * term.eta * term.eta / (mu2 - term.omega * term.omega);
      term.coupling = Eigen::MatrixXd::Zero(j0_.rows(), j0_.cols());
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
          if (i == j) continue;
          term.coupling(i, j) = scale * laser.rabi_at(i) * laser.rabi_at(j) * modes[k].vector[i] * modes[k].vector[j];
        }
      }
      j0_ += term.coupling * term.omega;
      terms_.push_back(std::move(term));
    }
  }

  std::size_t size() const noexcept { return n_; }
  const LaserParams& laser() const noexcept { return laser_; }
  const std::vector<ModeTerm>& terms() const noexcept { return terms_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  /// Time-averaged couplings J0.
  const Eigen::MatrixXd& j0() const noexcept { return j0_; }

  /// Full time-dependent J(t), t in seconds.
  Eigen::MatrixXd at(double t) const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(j0_.rows(), j0_.cols());
    for (const auto& term : terms_) j += term.coupling * exchange_bracket(term.omega, laser_.mu, t);
    return j;
  }

 private:
  LaserParams laser_;
  std::size_t n_;
  std::vector<ModeTerm> terms_;
  Eigen::MatrixXd j0_;
  std::vector<std::string> warnings_;
};

inline Eigen::MatrixXd static_exchange(const IonCrystal& crystal, const LaserParams& laser) {
  return ExchangeModel(crystal, laser).j0();
}

inline Eigen::MatrixXd exchange_at(const IonCrystal& crystal, const LaserParams& laser, double t) {
  if (t < 0.0) throw ConfigError("time must be non-negative");
  return ExchangeModel(crystal, laser).at(t);
}

/// RMS of J0 over ordered pairs, sqrt(sum_{i!=j} J0_ij^2 / (N(N-1))).
/// Equals the common value when all couplings coincide.
inline double j_rms(const Eigen::MatrixXd& j0) {
  const auto n = j0.rows();
  if (n < 2) throw ConfigError("J_rms needs at least two ions");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j) sum += j0(i, j) * j0(i, j);
    }
  }
  return std::sqrt(sum / static_cast<double>(n * (n - 1)));
}

/// The alternative normalisation sqrt(sum_{i>j} |2 J0_ij|^2 / (N(N-1))),
/// which is sqrt(2) times j_rms. Kept for comparison only.
inline double j_rms_doubled_pairs(const Eigen::MatrixXd& j0) {
  const auto n = j0.rows();
  if (n < 2) throw ConfigError("J_rms needs at least two ions");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) sum += 4.0 * j0(i, j) * j0(i, j);
  }
  return std::sqrt(sum / static_cast<double>(n * (n - 1)));
}

/// Splitting between the two target states for a fixed control configuration,
/// Delta = E(+, controls) - E(-, controls) = 4 sum_{i != target} J0_{i,target} sigma_i.
/// `control_signs` lists the non-target ions in ion order.
inline double delta_for_control(const Eigen::MatrixXd& j0, std::size_t target, std::span<const int> control_signs) {
  const auto n = static_cast<std::size_t>(j0.rows());
  if (target >= n) throw ConfigError("target index out of range");
  if (control_signs.size() + 1 != n) throw ConfigError("need one control sign per non-target ion");
  double delta = 0.0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == target) continue;
    const int s = control_signs[c++];
    if (s != 1 && s != -1) throw ConfigError("control signs must be +1 or -1");
    delta += 4.0 * j0(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(target)) * s;
  }
  return delta;
}

}  // namespace trapsim
