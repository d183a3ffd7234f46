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
/// Classical equilibrium and harmonic normal modes of a linear Coulomb
/// crystal. Lengths are in units of the Coulomb length
/// (e^2 / 4 pi eps0 m w_z^2)^(1/3) and frequencies are dimensionless ratios;
/// conversion to rad/s happens only through IonCrystal::transverse_frequency
/// and friends.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trapsim/errors.hpp"

namespace trapsim {

struct TrapConfig {
  std::size_t n_ions = 1;
  double omega_cm = 0.0;    ///< transverse centre-of-mass frequency, rad/s
  double anisotropy = 0.1;  ///< w_longitudinal_cm / w_transverse_cm

  void validate() const {
    if (n_ions < 1) throw ConfigError("n_ions must be at least 1");
    if (!(omega_cm > 0.0)) throw ConfigError("omega_cm must be positive");
    if (!(anisotropy > 0.0 && anisotropy < 1.0)) {
      throw ConfigError("anisotropy must lie strictly between 0 and 1");
    }
  }
};

/// One normal mode: frequency as a ratio to the family's CM frequency and a
/// unit-norm participation vector b_i.
struct NormalMode {
  double ratio = 0.0;
  std::vector<double> vector;
};

namespace detail {

inline double force_residual(const std::vector<double>& u) {
  const std::size_t n = u.size();
  double worst = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    double f = u[m];
    for (std::size_t p = 0; p < n; ++p) {
      if (p == m) continue;
      const double d = u[m] - u[p];
      f += (p < m ? -1.0 : 1.0) / (d * d);
    }
    worst = std::max(worst, std::abs(f));
  }
  return worst;
}

inline Eigen::VectorXd force_vector(const Eigen::VectorXd& u) {
  const auto n = u.size();
  Eigen::VectorXd f = u;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index p = 0; p < n; ++p) {
      if (p == m) continue;
      const double d = u[m] - u[p];
      f[m] += (p < m ? -1.0 : 1.0) / (d * d);
    }
  }
  return f;
}

// First entry with magnitude above tol is made positive.
inline void fix_sign(std::vector<double>& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-10) {
      if (x < 0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

inline std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c) {
  std::vector<double> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) out[static_cast<std::size_t>(r)] = m(r, c);
  fix_sign(out);
  return out;
}

}  // namespace detail

/// Equilibrium coordinates u_1 < ... < u_N of N ions in a harmonic axial
/// well. Damped Newton iteration from an evenly spaced guess; the returned
/// set is symmetrised so that u_i = -u_{N+1-i} exactly.
inline std::vector<double> equilibrium_positions(std::size_t n_ions, int max_iterations = 200) {
  if (n_ions < 1) throw ConfigError("n_ions must be at least 1");
  if (n_ions == 1) return {0.0};

  const auto n = static_cast<Eigen::Index>(n_ions);
  // Empirical spacing of the central ions, ~2.018 / N^0.559.
  const double spacing = 2.018 / std::pow(static_cast<double>(n_ions), 0.559);
  Eigen::VectorXd u(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    u[m] = spacing * (static_cast<double>(m) - 0.5 * static_cast<double>(n - 1));
  }

  auto ordered = [](const Eigen::VectorXd& x) {
    for (Eigen::Index i = 1; i < x.size(); ++i) {
      if (!(x[i] > x[i - 1])) return false;
    }
    return true;
  };

  Eigen::VectorXd f = detail::force_vector(u);
  double res = f.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < max_iterations && res > 1e-14; ++it) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
      for (Eigen::Index p = 0; p < n; ++p) {
        if (p == m) continue;
        const double k = 2.0 / std::pow(std::abs(u[m] - u[p]), 3);
        jac(m, m) += k;
        jac(m, p) = -k;
      }
    }
    const Eigen::VectorXd step = jac.ldlt().solve(-f);
    double damping = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd trial = u + damping * step;
      if (ordered(trial)) {
        const Eigen::VectorXd ft = detail::force_vector(trial);
        const double rt = ft.lpNorm<Eigen::Infinity>();
        if (rt < res || rt < 1e-14) {
          u = trial;
          f = ft;
          res = rt;
          accepted = true;
          break;
        }
      }
      damping *= 0.5;
    }
    if (!accepted) break;
  }

  std::vector<double> out(n_ions);
  for (std::size_t m = 0; m < n_ions; ++m) {
    out[m] = 0.5 * (u[static_cast<Eigen::Index>(m)] - u[n - 1 - static_cast<Eigen::Index>(m)]);
  }
  const double final_residual = detail::force_residual(out);
  if (!(final_residual < 1e-12)) {
    throw SolverFailure("equilibrium solve did not converge (residual " +
                            std::to_string(final_residual) + ")",
                        final_residual);
  }
  return out;
}

/// Axial stiffness matrix: diagonal 1 + 2 sum 1/|u_m-u_p|^3, off-diagonal -2/|u_m-u_p|^3.
inline Eigen::MatrixXd longitudinal_stiffness(const std::vector<double>& positions) {
  const auto n = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index p = 0; p < n; ++p) {
      if (p == m) continue;
      const double k = 1.0 / std::pow(std::abs(positions[m] - positions[p]), 3);
      a(m, m) += 2.0 * k;
      a(m, p) = -2.0 * k;
    }
  }
  return a;
}

/// Transverse stiffness in units of the axial CM frequency squared:
/// diagonal alpha^2 - sum 1/|u_m-u_p|^3, off-diagonal +1/|u_m-u_p|^3,
/// alpha = 1/anisotropy.
inline Eigen::MatrixXd transverse_stiffness(const std::vector<double>& positions, double anisotropy) {
  if (!(anisotropy > 0.0 && anisotropy < 1.0)) {
    throw ConfigError("anisotropy must lie strictly between 0 and 1");
  }
  const double alpha = 1.0 / anisotropy;
  const auto n = static_cast<Eigen::Index>(positions.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) * (alpha * alpha);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index p = 0; p < n; ++p) {
      if (p == m) continue;
      const double k = 1.0 / std::pow(std::abs(positions[m] - positions[p]), 3);
      b(m, m) -= k;
      b(m, p) = k;
    }
  }
  return b;
}

namespace detail {

inline void require_symmetric(const Eigen::MatrixXd& a, const char* what) {
  if ((a - a.transpose()).lpNorm<Eigen::Infinity>() > 1e-12 * std::max(1.0, a.lpNorm<Eigen::Infinity>())) {
    throw ConsistencyError(std::string(what) + " stiffness matrix is not symmetric");
  }
}

}  // namespace detail

/// Axial modes sorted ascending; ratio = sqrt(eigenvalue), so the CM mode has ratio 1.
inline std::vector<NormalMode> longitudinal_modes(const std::vector<double>& positions) {
  const Eigen::MatrixXd a = longitudinal_stiffness(positions);
  detail::require_symmetric(a, "longitudinal");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) throw ConsistencyError("longitudinal eigensolve failed");
  std::vector<NormalMode> modes;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const double lambda = es.eigenvalues()[k];
    if (!(lambda > 0.0)) throw ConsistencyError("longitudinal stiffness is not positive definite");
    modes.push_back({std::sqrt(lambda), detail::column(es.eigenvectors(), k)});
  }
  return modes;
}

/// Transverse modes sorted descending, ratios relative to the transverse CM
/// frequency (CM first, ratio 1).
inline std::vector<NormalMode> transverse_modes(const std::vector<double>& positions, double anisotropy) {
  const Eigen::MatrixXd b = transverse_stiffness(positions, anisotropy);
  detail::require_symmetric(b, "transverse");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  if (es.info() != Eigen::Success) throw ConsistencyError("transverse eigensolve failed");
  const double alpha2 = 1.0 / (anisotropy * anisotropy);
  const auto n = b.rows();
  std::vector<NormalMode> modes;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    const double lambda = es.eigenvalues()[k];
    const auto index = static_cast<std::size_t>(n - 1 - k);
    if (!(lambda > 0.0)) {
      throw InstabilityError("transverse mode " + std::to_string(index) +
                                 " has non-positive stiffness; crystal is past the zigzag transition",
                             index);
    }
    modes.push_back({std::sqrt(lambda / alpha2), detail::column(es.eigenvectors(), k)});
  }
  return modes;
}

/// Immutable equilibrium + mode data for one trap setting.
class IonCrystal {
 public:
  explicit IonCrystal(const TrapConfig& trap) : trap_(trap) {
    trap_.validate();
    positions_ = equilibrium_positions(trap_.n_ions);
    longitudinal_ = longitudinal_modes(positions_);
    transverse_ = transverse_modes(positions_, trap_.anisotropy);
  }

  const TrapConfig& trap() const noexcept { return trap_; }
  std::size_t size() const noexcept { return trap_.n_ions; }
  const std::vector<double>& positions() const noexcept { return positions_; }
  const std::vector<NormalMode>& longitudinal() const noexcept { return longitudinal_; }
  const std::vector<NormalMode>& transverse() const noexcept { return transverse_; }

  /// rad/s
  double transverse_frequency(std::size_t mode) const { return transverse_.at(mode).ratio * trap_.omega_cm; }
  double longitudinal_frequency(std::size_t mode) const {
    return longitudinal_.at(mode).ratio * trap_.anisotropy * trap_.omega_cm;
  }

  static constexpr std::size_t cm_mode() noexcept { return 0; }
  /// Lowest transverse mode; for N = 3 this is the zigzag mode.
  std::size_t zigzag_mode() const noexcept { return transverse_.size() - 1; }

 private:
  TrapConfig trap_;
  std::vector<double> positions_;
  std::vector<NormalMode> longitudinal_;
  std::vector<NormalMode> transverse_;
};

}  // namespace trapsim
