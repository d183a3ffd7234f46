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
/// Field schedules for i-Toffoli / i-select gates, the closed-form evolution
/// of one control subspace, and per-pattern gate reports.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trapsim/errors.hpp"
#include "trapsim/exchange_model.hpp"
#include "trapsim/hamiltonian.hpp"
#include "trapsim/spin_dynamics.hpp"
#include "trapsim/spin_state.hpp"

namespace trapsim {

enum class GateKind { toffoli, select };
enum class ModeReference { cm, zigzag };

inline std::string to_string(GateKind k) { return k == GateKind::toffoli ? "toffoli" : "select"; }
inline std::string to_string(ModeReference m) { return m == ModeReference::cm ? "cm" : "zigzag"; }

struct GateSpec {
  GateKind kind = GateKind::toffoli;
  std::size_t target = 0;
  ControlPattern selected_controls;  ///< branch to flip on, one sign per control ion
  double by = 0.0;                   ///< rad/s
  ModeReference mode_reference = ModeReference::cm;
  double detuning_ratio = 1.0;
  int pulse_multiple = 1;  ///< B_y t = pulse_multiple * pi/2, odd
  FieldScope scope = FieldScope::target;

  void validate(std::size_t n_ions) const {
    if (!(by > 0.0)) throw ConfigError("transverse field must be positive");
    if (target >= n_ions) throw ConfigError("target index out of range");
    if (selected_controls.size() + 1 != n_ions) {
      throw ConfigError("selected_controls must have n_ions - 1 entries");
    }
    if (detuning_ratio == 1.0) throw ConfigError("detuning_ratio must differ from 1");
    if (pulse_multiple < 1 || pulse_multiple % 2 == 0) throw ConfigError("pulse_multiple must be a positive odd integer");
  }
};

/// bx = Delta of the selected branch, by from the spec, duration so that
/// by * t = pulse_multiple * pi / 2. Throws AmbiguityError if another branch
/// sits within 2 by of the selected splitting.
inline FieldSchedule design_gate(const GateSpec& spec, const Eigen::MatrixXd& j0) {
  const auto n = static_cast<std::size_t>(j0.rows());
  spec.validate(n);
  const double bx = delta_for_control(j0, spec.target, spec.selected_controls);
  for (const auto& p : all_control_patterns(n - 1)) {
    if (p == spec.selected_controls) continue;
    const double other = delta_for_control(j0, spec.target, p);
    if (std::abs(other - bx) < 2.0 * spec.by) {
      throw AmbiguityError("branch " + pattern_signs(spec.selected_controls) + " is degenerate with branch " +
                           pattern_signs(p));
    }
  }
  FieldSchedule f;
  f.bx = bx;
  f.by = spec.by;
  f.scope = spec.scope;
  f.target = spec.target;
  f.duration = spec.pulse_multiple * (std::numbers::pi / 2.0) / spec.by;
  return f;
}

/// 2x2 evolution of the target spin inside one control subspace, basis (+, -).
struct SubspaceEvolution {
  double delta = 0.0;
  double bx = 0.0;
  double by = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double duration = 0.0;
  std::array<Complex, 4> u{};  ///< row major: u[0] = <+|U|+>, u[1] = <+|U|->, ...

  Complex operator()(std::size_t row, std::size_t col) const { return u[2 * row + col]; }
  double flip_probability() const { return std::norm(u[2]); }

  /// max |U^dagger U - I|.
  double unitarity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < 2; ++k) s += std::conj(u[2 * k + r]) * u[2 * k + c];
        worst = std::max(worst, std::abs(s - (r == c ? 1.0 : 0.0)));
      }
    }
    return worst;
  }
};

/// exp(-i H t) for H = (e+ + e-)/2 + (delta - bx)/2 X + by Y, with Y real in
/// the X basis (see hamiltonian.hpp). On resonance with by t = pi/2 the flip
/// amplitude is +i times the subspace phase exp(-i (e+ + e-) t / 2).
inline SubspaceEvolution analytic_subspace_evolution(double delta, double bx, double by, double e_plus,
                                                     double e_minus, double t) {
  if (t < 0.0) throw ConfigError("time must be non-negative");
  SubspaceEvolution ev{delta, bx, by, e_plus, e_minus, t, {}};
  const double half_detuning = 0.5 * (delta - bx);
  const double rabi = std::hypot(half_detuning, by);
  const double x = rabi * t;
  const double c = std::cos(x);
  // sin(x)/rabi with the small-rabi limit t (1 - x^2/6).
  const double s_over = x < 1e-4 ? t * (1.0 - x * x / 6.0) : std::sin(x) / rabi;
  const Complex phase = std::polar(1.0, -0.5 * (e_plus + e_minus) * t);
  const Complex mi(0.0, -1.0);
  ev.u[0] = phase * (c + mi * s_over * half_detuning);
  ev.u[3] = phase * (c - mi * s_over * half_detuning);
  ev.u[1] = phase * (mi * s_over * by * kYElement);
  ev.u[2] = ev.u[1];
  return ev;
}

/// Phase reference energies (e+, e-) of the two target states for a control
/// pattern: Ising energies plus the longitudinal field on the control ions
/// when the field is global. The target's own field term enters through bx.
inline std::pair<double, double> subspace_energies(const Eigen::MatrixXd& j0, std::size_t target,
                                                   std::span<const int> controls, double bx, FieldScope scope) {
  double control_field = 0.0;
  if (scope == FieldScope::all) {
    for (int s : controls) control_field -= 0.5 * bx * s;
  }
  const auto plus = full_configuration(target, 1, controls);
  const auto minus = full_configuration(target, -1, controls);
  return {ising_energy(j0, index_of(plus)) + control_field, ising_energy(j0, index_of(minus)) + control_field};
}

/// Applies the closed-form subspace evolutions to a full state. Exact for a
/// static J with the transverse field on the target only.
inline SpinState apply_analytic_evolution(const SpinState& state, const Eigen::MatrixXd& j0, std::size_t target,
                                          double bx, double by, double t) {
  const std::size_t n = state.ions();
  if (static_cast<std::size_t>(j0.rows()) != n) throw ConfigError("coupling matrix size does not match the state");
  Amplitudes out(state.dimension());
  for (const auto& p : all_control_patterns(n - 1)) {
    const auto [ep, em] = subspace_energies(j0, target, p, bx, FieldScope::target);
    const auto ev = analytic_subspace_evolution(delta_for_control(j0, target, p), bx, by, ep, em, t);
    const std::size_t ip = index_of(full_configuration(target, 1, p));
    const std::size_t im = index_of(full_configuration(target, -1, p));
    out[ip] = ev(0, 0) * state[ip] + ev(0, 1) * state[im];
    out[im] = ev(1, 0) * state[ip] + ev(1, 1) * state[im];
  }
  return SpinState(n, std::move(out));
}

/// Leading off-resonant error scale by / |delta - bx|; +inf on resonance.
inline double predicted_error_bound(double delta, double bx, double by) {
  const double gap = std::abs(delta - bx);
  if (gap == 0.0) return std::numeric_limits<double>::infinity();
  return by / gap;
}

struct GateReport {
  struct Row {
    ControlPattern pattern;
    double p_flip = 0.0;
    double p_no_flip = 0.0;
    bool selected = false;
  };

  std::vector<Row> rows;  ///< one per control pattern, '-' first
  double worst_false_flip = 0.0;
  double on_branch_infidelity = 0.0;
  FieldSchedule schedule;
  Eigen::MatrixXd j0;
  double j_rms = 0.0;
  TrajectoryStats stats;  ///< summed steps, max drift over all runs
  std::vector<std::string> notes;

  const Row& row(const ControlPattern& p) const {
    for (const auto& r : rows) {
      if (r.pattern == p) return r;
    }
    throw ConfigError("no report row for pattern " + pattern_signs(p));
  }
};

/// Trajectory of one control pattern with the target prepared in `target_sign`.
struct PatternRun {
  ControlPattern pattern;
  int target_sign = 1;
  Trajectory trajectory;
};

/// P_flip for one run: 1 - P(target still in its initial X state). Any norm
/// drift is charged to the flip probability rather than hidden.
inline double flip_probability(const SpinState& state, std::size_t target, int initial_sign) {
  const auto [plus, minus] = target_probabilities(state, target);
  return 1.0 - (initial_sign > 0 ? plus : minus);
}

inline GateReport gate_report(const Eigen::MatrixXd& j0, const GateSpec& spec, const FieldSchedule& schedule,
                              const std::vector<PatternRun>& runs) {
  const auto n = static_cast<std::size_t>(j0.rows());
  GateReport rep;
  rep.schedule = schedule;
  rep.j0 = j0;
  rep.j_rms = n >= 2 ? j_rms(j0) : 0.0;
  for (const auto& p : all_control_patterns(n - 1)) {
    auto it = std::find_if(runs.begin(), runs.end(), [&](const PatternRun& r) { return r.pattern == p; });
    if (it == runs.end()) throw ConfigError("incomplete report: missing control pattern " + pattern_signs(p));
    const double pf = flip_probability(it->trajectory.final_state(), spec.target, it->target_sign);
    GateReport::Row row{p, pf, 1.0 - pf, p == spec.selected_controls};
    if (row.selected) {
      rep.on_branch_infidelity = 1.0 - pf;
    } else {
      rep.worst_false_flip = std::max(rep.worst_false_flip, pf);
    }
    rep.stats.steps += it->trajectory.stats.steps;
    rep.stats.rejected += it->trajectory.stats.rejected;
    rep.stats.rhs_evaluations += it->trajectory.stats.rhs_evaluations;
    rep.stats.max_norm_drift = std::max(rep.stats.max_norm_drift, it->trajectory.stats.max_norm_drift);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace trapsim
