#pragma once

// Scenario files: one JSON object with a section per module. Unknown keys
// anywhere are errors, and every numeric field is validated before any
// computation starts.
//
//   {
//     "gas":          {"R": 1, "gamma": 1.4, "A": 1, "kappa": 1},
//     "z_plus":       {"v": 1, "u": 1.25, "theta": 1},          // or "rho" for "v"
//     "wave": {
//       "bl":          {"theta_minus": 0.93} | {"theta_minus_offset": -0.01},
//       "rarefaction": {"delta_r": 0.2} | {"v_m": 1.2}, "eps": 0.05, "q": 20,
//       "times":       [0, 100, 200]
//     },
//     "grid":         {"L": "auto", "N": 2048},
//     "sim":          {"cfl": 0.4, "t_end": 200, "output_stride": 50, "decay_target": 0.1},
//     "perturbation": {"kind": "psi", "amplitude": 0.01, "width": 0, "start": 0},
//     "classify":     {"gamma": [1.4], "u_plus": {"from": 0, "to": 1.5, "count": 200,
//                      "scale": "c_sound"}, "theta_minus": [0.99], "random": 0},
//     "seed": 0
//   }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "inflow/solver.hpp"

namespace inflow::cli {

struct ClassifySweep {
  std::vector<double> gammas;       ///< empty: gas.gamma
  double u_from = 0.0, u_to = 0.0;  ///< u+ range (in units of `scale`)
  int u_count = 0;                  ///< 0: the single point z_plus.u
  std::string scale = "absolute";   ///< absolute | c_tilde | c_sound
  bool endpoint_open = true;        ///< sample the open interval (from, to)
  std::vector<double> theta_minus;  ///< empty: the scenario's boundary temperature
  int random = 0;                   ///< extra u+ points drawn from the seed
};

struct Scenario {
  GasParams gas{1.0, 1.4, 1.0, 1.0};
  LagState z_plus;

  std::optional<double> theta_minus;
  std::optional<double> theta_minus_offset;  ///< theta- = theta_m + offset
  std::optional<double> v_m;
  std::optional<double> delta_r;
  double eps = 0.05;
  double q = 20.0;
  std::vector<double> wave_times{0.0};

  std::optional<double> L;  ///< unset: default_length
  int N = 2048;
  SimConfig sim;
  Perturbation pert;
  ClassifySweep classify;
  std::uint64_t seed = 0;

  /// Boundary temperature for a given intermediate temperature.
  double theta_minus_for(double theta_m) const;
};

/// Throws Error{Config} on unknown keys, wrong types or out-of-range values.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Every field with defaults filled in; `length` is the resolved domain
/// length when known.
nlohmann::json to_json(const Scenario& s, std::optional<double> length = std::nullopt);

CompositeSpec composite_spec(const Scenario& s);
CompositeWave build_wave(const Scenario& s);
Grid resolve_grid(const Scenario& s, const CompositeWave& wave);

std::string_view to_string(Perturbation::Kind k);

}  // namespace inflow::cli
