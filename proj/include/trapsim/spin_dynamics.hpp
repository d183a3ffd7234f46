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
/// Time evolution of the spin register under static or time-dependent
/// exchange plus the gate fields.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trapsim/bogacki_shampine.hpp"
#include "trapsim/errors.hpp"
#include "trapsim/exchange_model.hpp"
#include "trapsim/hamiltonian.hpp"
#include "trapsim/spin_state.hpp"

namespace trapsim {

enum class ExchangeKind { static_average, time_dependent };

inline std::string to_string(ExchangeKind k) {
  return k == ExchangeKind::static_average ? "static" : "time_dependent";
}

/// J(t) = sum_k C_k w_k(t). For static sources w_k is a constant; for the
/// time-dependent exchange it is the mode bracket g_k(t).
class ExchangeSource {
 public:
  struct Term {
    Eigen::MatrixXd coupling;
    double omega = 1.0;
  };

  /// Fixed coupling matrix.
  static ExchangeSource constant(const Eigen::MatrixXd& j) {
    ExchangeSource s;
    s.kind_ = ExchangeKind::static_average;
    s.terms_.push_back({j, 1.0});
    return s;
  }

  static ExchangeSource from_model(const ExchangeModel& model, ExchangeKind kind) {
    ExchangeSource s;
    s.kind_ = kind;
    s.mu_ = model.laser().mu;
    for (const auto& t : model.terms()) s.terms_.push_back({t.coupling, t.omega});
    if (s.terms_.empty()) {
      const auto n = static_cast<Eigen::Index>(model.size());
      s.terms_.push_back({Eigen::MatrixXd::Zero(n, n), 1.0});
    }
    return s;
  }

  ExchangeKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(terms_.front().coupling.rows()); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  double weight(std::size_t k, double t) const noexcept {
    const auto& term = terms_[k];
    return kind_ == ExchangeKind::static_average ? term.omega : exchange_bracket(term.omega, mu_, t);
  }

  /// Integral of weight(k, .) over [0, t].
  double weight_integral(std::size_t k, double t) const noexcept {
    const auto& term = terms_[k];
    return kind_ == ExchangeKind::static_average ? term.omega * t : exchange_bracket_integral(term.omega, mu_, t);
  }

  Eigen::MatrixXd at(double t) const {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(terms_.front().coupling.rows(), terms_.front().coupling.cols());
    for (std::size_t k = 0; k < terms_.size(); ++k) j += terms_[k].coupling * weight(k, t);
    return j;
  }

 private:
  ExchangeKind kind_ = ExchangeKind::static_average;
  double mu_ = 0.0;
  std::vector<Term> terms_;
};

/// Lab frame integrates psi directly. The rotating frame integrates
/// phi_s = exp(i Phi_s(t)) psi_s where Phi_s is the closed-form integral of
/// the diagonal energy, so only the transverse field is stepped numerically.
enum class Frame { rotating, lab };

struct EvolveOptions {
  StepControl control{};
  std::size_t n_samples = 200;
  double norm_budget = 1e-6;
  Frame frame = Frame::rotating;
};

struct TrajectoryStats {
  std::size_t steps = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
  double max_norm_drift = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpinState> states;
  TrajectoryStats stats;

  const SpinState& final_state() const { return states.back(); }
};

/// Precomputed pieces of H(t) for one source and field.
class SpinHamiltonian {
 public:
  SpinHamiltonian(const ExchangeSource& source, const FieldSchedule& field)
      : source_(source), field_(field), n_(source.size()) {
    if (n_ < 1 || n_ > kMaxIons) throw ConfigError("unsupported number of ions");
    const std::size_t dim = std::size_t{1} << n_;
    for (const auto& term : source.terms()) {
      std::vector<double> q(dim);
      for (std::size_t s = 0; s < dim; ++s) q[s] = ising_energy(term.coupling, s);
      mode_energy_.push_back(std::move(q));
    }
    field_energy_.assign(dim, 0.0);
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t i = 0; i < n_; ++i) {
        if (field.acts_on(i)) field_energy_[s] -= 0.5 * field.bx * spin_of(s, n_, i);
      }
    }
    for (std::size_t i = 0; i < n_; ++i) {
      if (field.acts_on(i)) flip_masks_.push_back(ion_bit(n_, i));
    }
  }

  std::size_t ions() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return field_energy_.size(); }

  /// Diagonal energies E_s(t).
  void energies(double t, std::vector<double>& e) const {
    e = field_energy_;
    for (std::size_t k = 0; k < mode_energy_.size(); ++k) {
      const double w = source_.weight(k, t);
      const auto& q = mode_energy_[k];
      for (std::size_t s = 0; s < e.size(); ++s) e[s] += w * q[s];
    }
  }

  /// Phi_s(t) = int_0^t E_s.
  void phases(double t, std::vector<double>& phi) const {
    phi.assign(dimension(), 0.0);
    for (std::size_t s = 0; s < phi.size(); ++s) phi[s] = field_energy_[s] * t;
    for (std::size_t k = 0; k < mode_energy_.size(); ++k) {
      const double w = source_.weight_integral(k, t);
      const auto& q = mode_energy_[k];
      for (std::size_t s = 0; s < phi.size(); ++s) phi[s] += w * q[s];
    }
  }

  /// d psi / dt = -i H(t) psi.
  void lab_rhs(double t, const Amplitudes& psi, Amplitudes& out) const {
    energies(t, scratch_);
    const double yb = field_.by * kYElement;
    for (std::size_t s = 0; s < psi.size(); ++s) {
      Complex h = scratch_[s] * psi[s];
      for (std::size_t m : flip_masks_) h += yb * psi[s ^ m];
      out[s] = Complex(h.imag(), -h.real());
    }
  }

  /// d phi / dt in the rotating frame.
  void rotating_rhs(double t, const Amplitudes& phi, Amplitudes& out) const {
    phases(t, scratch_);
    rot_.resize(phi.size());
    psi_.resize(phi.size());
    for (std::size_t s = 0; s < phi.size(); ++s) {
      rot_[s] = Complex(std::cos(scratch_[s]), std::sin(scratch_[s]));
      psi_[s] = std::conj(rot_[s]) * phi[s];
    }
    const double yb = field_.by * kYElement;
    for (std::size_t s = 0; s < phi.size(); ++s) {
      Complex h = 0.0;
      for (std::size_t m : flip_masks_) h += psi_[s ^ m];
      h *= yb;
      // -i * rot * (yb * sum)
      const Complex v = rot_[s] * h;
      out[s] = Complex(v.imag(), -v.real());
    }
  }

  void to_lab(double t, Amplitudes& phi) const {
    phases(t, scratch_);
    for (std::size_t s = 0; s < phi.size(); ++s) phi[s] *= std::polar(1.0, -scratch_[s]);
  }

 private:
  ExchangeSource source_;
  FieldSchedule field_;
  std::size_t n_;
  std::vector<std::vector<double>> mode_energy_;
  std::vector<double> field_energy_;
  std::vector<std::size_t> flip_masks_;
  mutable std::vector<double> scratch_;
  mutable Amplitudes rot_;
  mutable Amplitudes psi_;
};

/// Integrates the Schrodinger equation over [0, field.duration]; samples at
/// n_samples + 1 uniform times including both ends. Throws IntegrationError
/// if the norm drifts by more than the budget; states are never renormalised.
inline Trajectory evolve(const SpinState& initial, const ExchangeSource& source, const FieldSchedule& field,
                         const EvolveOptions& options = {}) {
  const std::size_t n = initial.ions();
  if (source.size() != n) throw ConfigError("exchange source size does not match the state");
  field.validate(n);
  if (std::abs(initial.norm_squared() - 1.0) > 1e-9) throw ConfigError("initial state is not normalised");
  if (options.n_samples < 1) throw ConfigError("need at least one sample interval");

  SpinHamiltonian ham(source, field);
  const double duration = field.duration;

  std::vector<double> sample_times(options.n_samples + 1);
  for (std::size_t k = 0; k <= options.n_samples; ++k) {
    sample_times[k] = duration * static_cast<double>(k) / static_cast<double>(options.n_samples);
  }
  sample_times.back() = duration;

  Trajectory traj;
  traj.times.reserve(sample_times.size());
  traj.states.reserve(sample_times.size());
  const bool rotating = options.frame == Frame::rotating;

  auto on_sample = [&](double t, const Amplitudes& y) {
    Amplitudes a = y;
    if (rotating) ham.to_lab(t, a);
    traj.times.push_back(t);
    traj.states.emplace_back(n, std::move(a));
  };
  double max_drift = 0.0;
  auto on_step = [&](double t, const Amplitudes& y) {
    double s = 0.0;
    for (const auto& a : y) s += std::norm(a);
    const double drift = std::abs(s - 1.0);
    max_drift = std::max(max_drift, drift);
    if (drift > options.norm_budget) {
      std::ostringstream os;
      os << "norm drift " << drift << " exceeds budget " << options.norm_budget << " at t = " << t;
      throw IntegrationError(os.str());
    }
  };

  Amplitudes y = initial.amplitudes();
  IntegratorStats st;
  if (rotating) {
    st = integrate_bs32<Complex>([&](double t, const Amplitudes& a, Amplitudes& d) { ham.rotating_rhs(t, a, d); }, y,
                                 0.0, duration, sample_times, on_sample, on_step, options.control);
  } else {
    st = integrate_bs32<Complex>([&](double t, const Amplitudes& a, Amplitudes& d) { ham.lab_rhs(t, a, d); }, y, 0.0,
                                 duration, sample_times, on_sample, on_step, options.control);
  }
  traj.stats = {st.accepted, st.rejected, st.rhs_evaluations, max_drift};
  return traj;
}

}  // namespace trapsim
