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
/// Config-driven gate scenarios: parsing, end-to-end runs, parameter sweeps,
/// mode tables and the text / CSV / SVG writers used by the CLI.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "trapsim/errors.hpp"
#include "trapsim/exchange_model.hpp"
#include "trapsim/gate_design.hpp"
#include "trapsim/ion_crystal.hpp"
#include "trapsim/spin_dynamics.hpp"
#include "trapsim/spin_state.hpp"
#include "trapsim/units.hpp"

namespace trapsim {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_real(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v)) {
    throw ConfigError(key + ": expected a real number, got '" + value + "'");
  }
  return v;
}

inline long parse_int(const std::string& key, const std::string& value) {
  long v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (value.empty() || ec != std::errc{} || ptr != last) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return v;
}

/// Shortest round-trippable rendering, stable across runs.
inline std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_fixed(double v, int digits) {
  char buf[64];
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// For human-readable output.
inline std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

/// Flat key = value scenario description. Frequencies are cyclic (Hz).
struct ScenarioConfig {
  std::size_t n_ions = 3;
  std::size_t target_index = 1;  ///< 1-based
  double omega_cm_hz = 4.63975e6;
  std::optional<double> anisotropy;  ///< default: 0.1 for odd n_ions, 0.2092 for even
  double eta_cm = 0.06;
  double rabi_hz = 369.7e3;
  ModeReference mode_reference = ModeReference::cm;
  bool single_mode = true;  ///< mode_coupling = referenced | all
  double detuning_ratio = 1.0095;
  double by_hz = 75.98;
  bool bx_explicit = false;
  double bx_hz = 0.0;
  std::optional<std::string> selected_controls;  ///< default: all '-'
  GateKind kind = GateKind::toffoli;
  ExchangeKind exchange = ExchangeKind::time_dependent;
  FieldScope field_scope = FieldScope::target;
  Frame frame = Frame::rotating;
  int pulse_multiple = 1;
  std::size_t samples = 200;
  double rtol = 1e-8;
  double atol = 1e-10;
  bool plot = false;
  std::string out_dir = "out";

  static const std::vector<std::string>& sweepable_keys() {
    static const std::vector<std::string> keys = {"omega_cm_hz", "anisotropy", "eta_cm",   "rabi_hz",
                                                  "detuning_ratio", "by_hz",  "bx_hz", "pulse_multiple"};
    return keys;
  }

  double effective_anisotropy() const { return anisotropy.value_or(n_ions % 2 == 1 ? 0.1 : 0.2092); }

  ControlPattern selected_pattern() const {
    return selected_controls ? parse_pattern(*selected_controls) : ControlPattern(n_ions > 0 ? n_ions - 1 : 0, -1);
  }

  void set(const std::string& key, const std::string& value) {
    using detail::parse_int;
    using detail::parse_real;
    auto positive_size = [&](const std::string& k) {
      const long v = parse_int(k, value);
      if (v < 1) throw ConfigError(k + ": must be at least 1");
      return static_cast<std::size_t>(v);
    };
    if (key == "n_ions") {
      n_ions = positive_size(key);
    } else if (key == "target_index") {
      target_index = positive_size(key);
    } else if (key == "omega_cm_hz") {
      omega_cm_hz = parse_real(key, value);
    } else if (key == "anisotropy") {
      anisotropy = parse_real(key, value);
    } else if (key == "eta_cm") {
      eta_cm = parse_real(key, value);
    } else if (key == "rabi_hz") {
      rabi_hz = parse_real(key, value);
    } else if (key == "mode_reference") {
      if (value == "cm") {
        mode_reference = ModeReference::cm;
      } else if (value == "zigzag" || value == "zz") {
        mode_reference = ModeReference::zigzag;
      } else {
        throw ConfigError(key + ": expected cm or zigzag, got '" + value + "'");
      }
    } else if (key == "mode_coupling") {
      if (value == "referenced") {
        single_mode = true;
      } else if (value == "all") {
        single_mode = false;
      } else {
        throw ConfigError(key + ": expected referenced or all, got '" + value + "'");
      }
    } else if (key == "detuning_ratio") {
      detuning_ratio = parse_real(key, value);
    } else if (key == "by_hz") {
      by_hz = parse_real(key, value);
    } else if (key == "bx_mode") {
      if (value == "auto") {
        bx_explicit = false;
      } else if (value == "explicit") {
        bx_explicit = true;
      } else {
        throw ConfigError(key + ": expected auto or explicit, got '" + value + "'");
      }
    } else if (key == "bx_hz") {
      bx_hz = parse_real(key, value);
    } else if (key == "selected_controls") {
      parse_pattern(value);
      selected_controls = value;
    } else if (key == "kind") {
      if (value == "toffoli") {
        kind = GateKind::toffoli;
      } else if (value == "select") {
        kind = GateKind::select;
      } else {
        throw ConfigError(key + ": expected toffoli or select, got '" + value + "'");
      }
    } else if (key == "exchange") {
      if (value == "static") {
        exchange = ExchangeKind::static_average;
      } else if (value == "time_dependent") {
        exchange = ExchangeKind::time_dependent;
      } else {
        throw ConfigError(key + ": expected static or time_dependent, got '" + value + "'");
      }
    } else if (key == "field_scope") {
      if (value == "all") {
        field_scope = FieldScope::all;
      } else if (value == "target") {
        field_scope = FieldScope::target;
      } else {
        throw ConfigError(key + ": expected all or target, got '" + value + "'");
      }
    } else if (key == "frame") {
      if (value == "rotating") {
        frame = Frame::rotating;
      } else if (value == "lab") {
        frame = Frame::lab;
      } else {
        throw ConfigError(key + ": expected rotating or lab, got '" + value + "'");
      }
    } else if (key == "pulse_multiple") {
      const long v = parse_int(key, value);
      if (v < 1 || v % 2 == 0) throw ConfigError(key + ": must be a positive odd integer");
      pulse_multiple = static_cast<int>(v);
    } else if (key == "samples") {
      samples = positive_size(key);
    } else if (key == "rtol") {
      rtol = parse_real(key, value);
    } else if (key == "atol") {
      atol = parse_real(key, value);
    } else if (key == "plot") {
      if (value == "true" || value == "1") {
        plot = true;
      } else if (value == "false" || value == "0") {
        plot = false;
      } else {
        throw ConfigError(key + ": expected true or false, got '" + value + "'");
      }
    } else if (key == "out_dir") {
      if (value.empty()) throw ConfigError(key + ": must not be empty");
      out_dir = value;
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  void validate() const {
    if (n_ions < 1 || n_ions > 12) throw ConfigError("n_ions: must be between 1 and 12");
    if (target_index < 1 || target_index > n_ions) throw ConfigError("target_index: must be between 1 and n_ions");
    for (auto [name, v] : {std::pair<const char*, double>{"omega_cm_hz", omega_cm_hz},
                           {"eta_cm", eta_cm},
                           {"rabi_hz", rabi_hz},
                           {"detuning_ratio", detuning_ratio},
                           {"by_hz", by_hz},
                           {"rtol", rtol},
                           {"atol", atol}}) {
      if (!(v > 0.0)) throw ConfigError(std::string(name) + ": must be positive");
    }
    const double a = effective_anisotropy();
    if (!(a > 0.0 && a < 1.0)) throw ConfigError("anisotropy: must lie strictly between 0 and 1");
    if (!(eta_cm < 1.0)) throw ConfigError("eta_cm: must be below 1");
    if (selected_pattern().size() + 1 != n_ions) {
      throw ConfigError("selected_controls: expected " + std::to_string(n_ions - 1) + " signs for n_ions = " +
                        std::to_string(n_ions) + ", got " + std::to_string(selected_pattern().size()));
    }
  }

  /// Parses `key = value` lines; '#' starts a comment. Errors carry
  /// `<source>:<line>:`.
  static ScenarioConfig parse(std::string_view text, const std::string& source = "config") {
    ScenarioConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string body = detail::trim(line);
      if (body.empty()) continue;
      const auto eq = body.find('=');
      const std::string where = source + ":" + std::to_string(lineno) + ": ";
      if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
      const std::string key = detail::trim(std::string_view(body).substr(0, eq));
      const std::string value = detail::trim(std::string_view(body).substr(eq + 1));
      try {
        cfg.set(key, value);
      } catch (const ConfigError& e) {
        throw ConfigError(where + e.what());
      }
    }
    cfg.validate();
    return cfg;
  }

  static ScenarioConfig load(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str(), path.string());
  }
};

/// Everything derived from a config before time evolution.
struct ScenarioSetup {
  IonCrystal crystal;
  LaserParams laser;
  ExchangeModel model;
  GateSpec spec;
  FieldSchedule schedule;
};

inline LaserParams laser_params(const ScenarioConfig& cfg, const IonCrystal& crystal) {
  LaserParams lp;
  lp.rabi = hz_to_rad(cfg.rabi_hz);
  lp.eta_cm = cfg.eta_cm;
  lp.reference_mode = cfg.mode_reference == ModeReference::cm ? IonCrystal::cm_mode() : crystal.zigzag_mode();
  lp.single_mode = cfg.single_mode;
  lp.mu = cfg.detuning_ratio * crystal.transverse_frequency(lp.reference_mode);
  return lp;
}

inline IonCrystal make_crystal(const ScenarioConfig& cfg) {
  return IonCrystal(TrapConfig{cfg.n_ions, hz_to_rad(cfg.omega_cm_hz), cfg.effective_anisotropy()});
}

inline ScenarioSetup build_setup(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.n_ions < 2) throw ConfigError("n_ions: a gate needs at least two ions");
  IonCrystal crystal = make_crystal(cfg);
  LaserParams laser = laser_params(cfg, crystal);
  ExchangeModel model(crystal, laser);

  GateSpec spec;
  spec.kind = cfg.kind;
  spec.target = cfg.target_index - 1;
  spec.selected_controls = cfg.selected_pattern();
  spec.by = hz_to_rad(cfg.by_hz);
  spec.mode_reference = cfg.mode_reference;
  spec.detuning_ratio = cfg.detuning_ratio;
  spec.pulse_multiple = cfg.pulse_multiple;
  spec.scope = cfg.field_scope;

  FieldSchedule schedule;
  if (cfg.bx_explicit) {
    spec.validate(cfg.n_ions);
    schedule.bx = hz_to_rad(cfg.bx_hz);
    schedule.by = spec.by;
    schedule.scope = spec.scope;
    schedule.target = spec.target;
    schedule.duration = spec.pulse_multiple * (std::numbers::pi / 2.0) / spec.by;
  } else {
    schedule = design_gate(spec, model.j0());
  }
  return {std::move(crystal), std::move(laser), std::move(model), std::move(spec), schedule};
}

struct ScenarioResult {
  ScenarioConfig config;
  GateReport report;
  std::vector<PatternRun> runs;
};

inline EvolveOptions evolve_options(const ScenarioConfig& cfg) {
  EvolveOptions o;
  o.control.rtol = cfg.rtol;
  o.control.atol = cfg.atol;
  o.n_samples = cfg.samples;
  o.frame = cfg.frame;
  return o;
}

/// One evolve per control pattern (target prepared in |+>), run on up to
/// hardware_concurrency threads; the report is assembled afterwards.
inline ScenarioResult simulate(const ScenarioConfig& cfg) {
  const ScenarioSetup setup = build_setup(cfg);
  const ExchangeSource source = ExchangeSource::from_model(setup.model, cfg.exchange);
  const EvolveOptions options = evolve_options(cfg);
  const auto patterns = all_control_patterns(cfg.n_ions - 1);

  std::vector<PatternRun> runs(patterns.size());
  auto work = [&](std::size_t k) {
    const auto spins = full_configuration(setup.spec.target, 1, patterns[k]);
    runs[k] = PatternRun{patterns[k], 1, evolve(SpinState::basis(spins), source, setup.schedule, options)};
  };
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, patterns.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < patterns.size(); ++k) work(k);
  } else {
    std::vector<std::future<void>> futures;
    for (std::size_t w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t k = w; k < patterns.size(); k += workers) work(k);
      }));
    }
    for (auto& f : futures) f.get();
  }

  ScenarioResult result{cfg, gate_report(setup.model.j0(), setup.spec, setup.schedule, runs), std::move(runs)};
  for (const auto& w : setup.model.warnings()) result.report.notes.push_back("warning: " + w);
  if (cfg.field_scope == FieldScope::target) {
    result.report.notes.push_back(
        "note: transverse field on the target ion only; control ions keep their X eigenstates. "
        "With field_scope = all the control spins precess as well and the on-branch flip probability "
        "drops well below the tabulated values (the tables subcommand prints both).");
  } else {
    result.report.notes.push_back(
        "note: transverse field on all ions; control spins precess during the pulse, so the control "
        "register is not preserved and the on-branch flip probability falls below the target-only result.");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Writers

inline std::string render_report(const ScenarioConfig& cfg, const GateReport& rep) {
  std::ostringstream os;
  os << "i-" << to_string(cfg.kind) << " gate, " << cfg.n_ions << " ions, target ion " << cfg.target_index
     << ", selected controls " << pattern_signs(cfg.selected_pattern()) << "\n";
  os << "exchange: " << to_string(cfg.exchange) << ", field scope: " << to_string(cfg.field_scope)
     << ", mode: " << to_string(cfg.mode_reference) << " x " << detail::fmt_short(cfg.detuning_ratio)
     << (cfg.single_mode ? " (referenced mode only)" : " (all transverse modes)") << "\n";
  os << "J_rms/2pi = " << detail::fmt_fixed(rad_to_hz(rep.j_rms), 3) << " Hz\n";
  os << "J0/2pi (Hz):\n";
  for (Eigen::Index i = 0; i < rep.j0.rows(); ++i) {
    os << " ";
    for (Eigen::Index j = 0; j < rep.j0.cols(); ++j) os << " " << detail::fmt_fixed(rad_to_hz(rep.j0(i, j)), 3);
    os << "\n";
  }
  os << "bx/2pi = " << detail::fmt_fixed(rad_to_hz(rep.schedule.bx), 3)
     << " Hz, by/2pi = " << detail::fmt_fixed(rad_to_hz(rep.schedule.by), 3)
     << " Hz, duration = " << detail::fmt_short(rep.schedule.duration) << " s\n\n";
  os << "control    P_flip      P_no_flip\n";
  for (const auto& r : rep.rows) {
    std::string label = pattern_signs(r.pattern);
    label.resize(std::max<std::size_t>(label.size(), 10), ' ');
    os << label << " " << detail::fmt_fixed(r.p_flip, 6) << "    " << detail::fmt_fixed(r.p_no_flip, 6)
       << (r.selected ? "   <- selected" : "") << "\n";
  }
  os << "\nworst false flip: " << detail::fmt_fixed(rep.worst_false_flip, 6)
     << "\non-branch infidelity: " << detail::fmt_fixed(rep.on_branch_infidelity, 6) << "\n";
  os << "integrator: " << rep.stats.steps << " steps, " << rep.stats.rejected << " rejected, max norm drift "
     << detail::fmt_short(rep.stats.max_norm_drift) << "\n";
  for (const auto& n : rep.notes) os << n << "\n";
  return os.str();
}

inline std::string render_report_csv(const GateReport& rep) {
  std::ostringstream os;
  os << "control,p_flip,p_no_flip,selected\n";
  for (const auto& r : rep.rows) {
    os << pattern_signs(r.pattern) << "," << detail::fmt_real(r.p_flip) << "," << detail::fmt_real(r.p_no_flip) << ","
       << (r.selected ? 1 : 0) << "\n";
  }
  return os.str();
}

/// t_seconds,p_target_plus,p_target_minus,norm_drift
inline std::string render_trace_csv(const Trajectory& traj, std::size_t target) {
  std::ostringstream os;
  os << "t_seconds,p_target_plus,p_target_minus,norm_drift\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto [plus, minus] = target_probabilities(traj.states[k], target);
    os << detail::fmt_real(traj.times[k]) << "," << detail::fmt_real(plus) << "," << detail::fmt_real(minus) << ","
       << detail::fmt_real(traj.states[k].norm_squared() - 1.0) << "\n";
  }
  return os.str();
}

/// Static SVG: P(target +) solid and P(target -) dashed per pattern; the
/// selected pattern is red, the others blue.
inline std::string render_svg(const ScenarioResult& res) {
  constexpr double W = 720, H = 420, L = 60, R = 20, T = 20, B = 50;
  const double duration = res.report.schedule.duration;
  const std::size_t target = res.config.target_index - 1;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">t (s), 0 .. "
     << detail::fmt_real(duration) << "</text>\n";
  os << "<text x=\"15\" y=\"" << H / 2 << "\" transform=\"rotate(-90 15 " << H / 2
     << ")\" text-anchor=\"middle\">probability</text>\n";
  auto px = [&](double t) { return L + (W - L - R) * t / duration; };
  auto py = [&](double p) { return T + (H - T - B) * (1.0 - p); };
  for (const auto& run : res.runs) {
    const bool selected = run.pattern == res.config.selected_pattern();
    const char* colour = selected ? "#d62728" : "#1f77b4";
    for (int branch = 0; branch < 2; ++branch) {
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"" << (selected ? 2 : 1) << "\""
         << (branch == 1 ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
      for (std::size_t k = 0; k < run.trajectory.times.size(); ++k) {
        const auto pr = target_probabilities(run.trajectory.states[k], target);
        const double p = branch == 0 ? pr.first : pr.second;
        os << detail::fmt_fixed(px(run.trajectory.times[k]), 2) << "," << detail::fmt_fixed(py(p), 2) << " ";
      }
      os << "\"><title>" << pattern_signs(run.pattern) << (branch == 0 ? " P(+)" : " P(-)") << "</title></polyline>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
  if (!f) throw ConfigError("failed writing " + path.string());
}

inline std::filesystem::path resolve_out_dir(const ScenarioConfig& cfg) {
  if (const char* env = std::getenv("TRAPSIM_OUT"); env != nullptr && *env != '\0') return env;
  return cfg.out_dir;
}

inline void create_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

/// report.txt, report.csv, trace_<pattern>.csv and optionally plot.svg.
inline void write_outputs(const ScenarioResult& res, const std::filesystem::path& dir) {
  create_dir(dir);
  write_file(dir / "report.txt", render_report(res.config, res.report));
  write_file(dir / "report.csv", render_report_csv(res.report));
  const std::size_t target = res.config.target_index - 1;
  for (const auto& run : res.runs) {
    write_file(dir / ("trace_" + pattern_tag(run.pattern) + ".csv"), render_trace_csv(run.trajectory, target));
  }
  if (res.config.plot) write_file(dir / "plot.svg", render_svg(res));
}

/// Full run: simulate and write everything under the resolved out_dir.
inline ScenarioResult run(const ScenarioConfig& cfg) {
  ScenarioResult res = simulate(cfg);
  write_outputs(res, resolve_out_dir(cfg));
  return res;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRow {
  std::string value;
  ControlPattern pattern;
  double p_flip = 0.0;
  double p_no_flip = 0.0;
};

inline bool is_sweepable(const std::string& key) {
  const auto& keys = ScenarioConfig::sweepable_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

/// One scenario per value; each point writes its own report directory and
/// the summary goes to sweep_<key>.csv.
inline std::vector<SweepRow> sweep(const ScenarioConfig& base, const std::string& key,
                                   const std::vector<std::string>& values, bool write = true) {
  if (!is_sweepable(key)) throw ConfigError("'" + key + "' is not a sweepable numeric key");
  for (const auto& v : values) detail::parse_real(key, v);

  std::vector<SweepRow> rows;
  const auto dir = resolve_out_dir(base);
  for (std::size_t i = 0; i < values.size(); ++i) {
    ScenarioConfig cfg = base;
    cfg.set(key, values[i]);
    cfg.validate();
    ScenarioResult res = simulate(cfg);
    if (write) write_outputs(res, dir / ("sweep_" + key) / (std::to_string(i) + "_" + values[i]));
    for (const auto& r : res.report.rows) rows.push_back({values[i], r.pattern, r.p_flip, r.p_no_flip});
  }
  if (write) {
    create_dir(dir);
    std::ostringstream os;
    os << "value,control,p_flip,p_no_flip\n";
    for (const auto& r : rows) {
      os << r.value << "," << pattern_signs(r.pattern) << "," << detail::fmt_real(r.p_flip) << ","
         << detail::fmt_real(r.p_no_flip) << "\n";
    }
    write_file(dir / ("sweep_" + key + ".csv"), os.str());
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Mode table

inline std::string render_modes(const ScenarioConfig& cfg) {
  const IonCrystal crystal = make_crystal(cfg);
  std::ostringstream os;
  os << "ions: " << crystal.size() << ", anisotropy: " << detail::fmt_short(crystal.trap().anisotropy)
     << ", omega_cm/2pi: " << detail::fmt_short(cfg.omega_cm_hz) << " Hz\n";
  os << "equilibrium positions:";
  for (double u : crystal.positions()) os << " " << detail::fmt_fixed(u, 6);
  os << "\n\ntransverse modes (ratio to CM, frequency/2pi Hz, eigenvector)\n";
  for (std::size_t k = 0; k < crystal.transverse().size(); ++k) {
    const auto& m = crystal.transverse()[k];
    os << "  " << k << "  " << detail::fmt_fixed(m.ratio, 6) << "  "
       << detail::fmt_fixed(rad_to_hz(crystal.transverse_frequency(k)), 1) << "  {";
    for (std::size_t i = 0; i < m.vector.size(); ++i) os << (i ? ", " : "") << detail::fmt_fixed(m.vector[i], 4);
    os << "}\n";
  }
  os << "\nlongitudinal modes (ratio to CM, frequency/2pi Hz, eigenvector)\n";
  for (std::size_t k = 0; k < crystal.longitudinal().size(); ++k) {
    const auto& m = crystal.longitudinal()[k];
    os << "  " << k << "  " << detail::fmt_fixed(m.ratio, 6) << "  "
       << detail::fmt_fixed(rad_to_hz(crystal.longitudinal_frequency(k)), 1) << "  {";
    for (std::size_t i = 0; i < m.vector.size(); ++i) os << (i ? ", " : "") << detail::fmt_fixed(m.vector[i], 4);
    os << "}\n";
  }
  return os.str();
}

}  // namespace trapsim
