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
/// Bogacki-Shampine 3(2) embedded Runge-Kutta pair with FSAL, PI step-size
/// control and cubic Hermite dense output.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "trapsim/errors.hpp"

namespace trapsim {

struct StepControl {
  double rtol = 1e-8;
  double atol = 1e-10;
  double safety = 0.9;
  double min_factor = 0.2;
  double max_factor = 5.0;
  double initial_step = 0.0;  ///< 0 selects automatically
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000'000;

  void validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("integration tolerances must be positive");
  }
};

struct IntegratorStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

namespace detail {

inline double magnitude(double x) noexcept { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) noexcept { return std::abs(x); }

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 to t1 in place.
///
/// `rhs(t, y, dydt)` writes the derivative. `samples` must be sorted and lie
/// in [t0, t1]; `on_sample(t, y)` is called for each, with y interpolated
/// inside a step (exact at t0 and t1). `on_step(t, y)` is called after every
/// accepted step and may throw to abort.
template <class T, class Rhs, class SampleFn, class StepFn>
IntegratorStats integrate_bs32(Rhs&& rhs, std::vector<T>& y, double t0, double t1, std::span<const double> samples,
                               SampleFn&& on_sample, StepFn&& on_step, const StepControl& ctl = {}) {
  ctl.validate();
  if (!(t1 > t0)) throw ConfigError("integration interval must have positive length");

  constexpr double a21 = 0.5, a32 = 0.75;
  constexpr double b1 = 2.0 / 9.0, b2 = 1.0 / 3.0, b3 = 4.0 / 9.0;
  constexpr double e1 = -5.0 / 72.0, e2 = 1.0 / 12.0, e3 = 1.0 / 9.0, e4 = -1.0 / 8.0;
  // PI gains for an order-2 error estimate.
  constexpr double k_i = 0.7 / 3.0, k_p = 0.4 / 3.0;

  const std::size_t n = y.size();
  std::vector<T> k1(n), k2(n), k3(n), k4(n), tmp(n), ynew(n);
  IntegratorStats stats;

  auto eval = [&](double t, const std::vector<T>& x, std::vector<T>& dx) {
    rhs(t, x, dx);
    ++stats.rhs_evaluations;
  };

  auto scaled_norm = [&](const std::vector<T>& v, const std::vector<T>& ref) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = ctl.atol + ctl.rtol * detail::magnitude(ref[i]);
      const double r = detail::magnitude(v[i]) / sc;
      s += r * r;
    }
    return std::sqrt(s / static_cast<double>(std::max<std::size_t>(n, 1)));
  };

  std::size_t next_sample = 0;
  while (next_sample < samples.size() && samples[next_sample] <= t0) {
    on_sample(t0, y);
    ++next_sample;
  }

  double t = t0;
  eval(t, y, k1);

  double h = ctl.initial_step;
  if (!(h > 0.0)) {
    // Hairer, Norsett & Wanner, Solving ODEs I, II.4.
    const double d0 = scaled_norm(y, y);
    const double d1 = scaled_norm(k1, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * (t1 - t0) : 0.01 * d0 / d1;
    h0 = std::min(h0, t1 - t0);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k1[i];
    eval(t + h0, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) k2[i] -= k1[i];
    const double d2 = scaled_norm(k2, y) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6 * h0, 1e-3 * (t1 - t0)) : std::cbrt(0.01 / dm);
    h = std::min(100.0 * h0, h1);
  }
  h = std::min({h, ctl.max_step, t1 - t0});

  double err_prev = 1e-4;
  bool last_rejected = false;

  while (t < t1) {
    if (stats.accepted + stats.rejected >= ctl.max_steps) {
      throw IntegrationError("step budget exhausted at t = " + std::to_string(t));
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), std::abs(t1));
    if (h < h_min) {
      throw IntegrationError("step size underflow at t = " + std::to_string(t) + " (h = " + std::to_string(h) + ")");
    }
    bool final_step = false;
    if (t + h >= t1 || t + 1.0001 * h >= t1) {
      h = t1 - t;
      final_step = true;
    }

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + (a21 * h) * k1[i];
    eval(t + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + (a32 * h) * k2[i];
    eval(t + 0.75 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) ynew[i] = y[i] + h * (b1 * k1[i] + b2 * k2[i] + b3 * k3[i]);
    const double t_new = final_step ? t1 : t + h;
    eval(t_new, ynew, k4);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const T e = h * (e1 * k1[i] + e2 * k2[i] + e3 * k3[i] + e4 * k4[i]);
      const double sc = ctl.atol + ctl.rtol * std::max(detail::magnitude(y[i]), detail::magnitude(ynew[i]));
      err = std::max(err, detail::magnitude(e) / sc);
    }

    if (!(err <= 1.0)) {  // also rejects NaN
      ++stats.rejected;
      h *= std::max(ctl.min_factor, ctl.safety * std::pow(err, -1.0 / 3.0));
      last_rejected = true;
      continue;
    }

    // Dense output for samples inside (t, t_new).
    while (next_sample < samples.size() && samples[next_sample] < t_new) {
      const double ts = samples[next_sample];
      const double th = (ts - t) / h;
      const double th2 = th * th, th3 = th2 * th;
      const double h00 = 2 * th3 - 3 * th2 + 1, h10 = th3 - 2 * th2 + th;
      const double h01 = -2 * th3 + 3 * th2, h11 = th3 - th2;
      for (std::size_t i = 0; i < n; ++i) {
        tmp[i] = h00 * y[i] + (h10 * h) * k1[i] + h01 * ynew[i] + (h11 * h) * k4[i];
      }
      on_sample(ts, tmp);
      ++next_sample;
    }

    t = t_new;
    y.swap(ynew);
    k1.swap(k4);
    ++stats.accepted;
    on_step(t, y);

    while (next_sample < samples.size() && samples[next_sample] <= t) {
      on_sample(t, y);
      ++next_sample;
    }

    const double e = std::max(err, 1e-10);
    double factor = ctl.safety * std::pow(e, -k_i) * std::pow(err_prev, k_p);
    factor = std::clamp(factor, ctl.min_factor, ctl.max_factor);
    if (last_rejected) factor = std::min(factor, 1.0);
    err_prev = e;
    last_rejected = false;
    h = std::min(h * factor, ctl.max_step);
  }
  return stats;
}

}  // namespace trapsim
