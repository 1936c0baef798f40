#include "inflow/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "inflow/error.hpp"

namespace inflow::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where + " must be an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items()) {
    if (!allowed.count(k)) fail("unknown key '" + k + "' in " + where);
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(where + " must be finite");
  return x;
}

double positive(const json& j, const std::string& where) {
  const double x = number(j, where);
  if (!(x > 0.0)) fail(where + " must be positive");
  return x;
}

std::optional<double> opt_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj.at(key), where + "." + key);
}

std::vector<double> number_list(const json& j, const std::string& where) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(number(j, where));
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  } else {
    fail(where + " must be a number or a list of numbers");
  }
  return out;
}

Perturbation::Kind kind_from(const std::string& s) {
  if (s == "none") return Perturbation::Kind::None;
  if (s == "phi") return Perturbation::Kind::Phi;
  if (s == "psi") return Perturbation::Kind::Psi;
  if (s == "zeta") return Perturbation::Kind::Zeta;
  if (s == "all") return Perturbation::Kind::All;
  fail("perturbation.kind must be one of none, phi, psi, zeta, all (got '" + s + "')");
}

}  // namespace

std::string_view to_string(Perturbation::Kind k) {
  switch (k) {
    case Perturbation::Kind::None: return "none";
    case Perturbation::Kind::Phi: return "phi";
    case Perturbation::Kind::Psi: return "psi";
    case Perturbation::Kind::Zeta: return "zeta";
    case Perturbation::Kind::All: return "all";
  }
  return "?";
}

double Scenario::theta_minus_for(double theta_m) const {
  if (theta_minus) return *theta_minus;
  if (theta_minus_offset) return theta_m + *theta_minus_offset;
  return theta_m;
}

Scenario parse_scenario(const json& j) {
  only_keys(j, "scenario", {"gas", "z_plus", "wave", "grid", "sim", "perturbation", "classify", "seed"});
  Scenario s;

  if (j.contains("gas")) {
    const auto& g = j.at("gas");
    only_keys(g, "gas", {"R", "gamma", "A", "kappa"});
    const double R = g.contains("R") ? positive(g.at("R"), "gas.R") : 1.0;
    const double gamma = g.contains("gamma") ? number(g.at("gamma"), "gas.gamma") : 1.4;
    const double A = g.contains("A") ? positive(g.at("A"), "gas.A") : 1.0;
    const double kappa = g.contains("kappa") ? positive(g.at("kappa"), "gas.kappa") : 1.0;
    if (!(gamma > 1.0)) fail("gas.gamma must exceed 1");
    s.gas = GasParams(R, gamma, A, kappa);
  }

  if (!j.contains("z_plus")) fail("missing z_plus");
  {
    const auto& z = j.at("z_plus");
    only_keys(z, "z_plus", {"v", "rho", "u", "theta"});
    if (z.contains("v") == z.contains("rho")) fail("z_plus needs exactly one of v and rho");
    s.z_plus.v = z.contains("v") ? positive(z.at("v"), "z_plus.v") : 1.0 / positive(z.at("rho"), "z_plus.rho");
    if (!z.contains("u") || !z.contains("theta")) fail("z_plus needs u and theta");
    s.z_plus.u = number(z.at("u"), "z_plus.u");
    s.z_plus.theta = positive(z.at("theta"), "z_plus.theta");
    if (!(s.z_plus.u > 0.0)) fail("z_plus.u must be positive (inflow)");
  }

  if (j.contains("wave")) {
    const auto& w = j.at("wave");
    only_keys(w, "wave", {"bl", "rarefaction", "times"});
    if (w.contains("bl")) {
      const auto& b = w.at("bl");
      only_keys(b, "wave.bl", {"theta_minus", "theta_minus_offset"});
      s.theta_minus = opt_number(b, "theta_minus", "wave.bl");
      s.theta_minus_offset = opt_number(b, "theta_minus_offset", "wave.bl");
      if (s.theta_minus && s.theta_minus_offset) fail("wave.bl takes theta_minus or theta_minus_offset, not both");
      if (s.theta_minus && !(*s.theta_minus > 0.0)) fail("wave.bl.theta_minus must be positive");
    }
    if (w.contains("rarefaction")) {
      const auto& r = w.at("rarefaction");
      only_keys(r, "wave.rarefaction", {"v_m", "delta_r", "eps", "q"});
      s.v_m = opt_number(r, "v_m", "wave.rarefaction");
      s.delta_r = opt_number(r, "delta_r", "wave.rarefaction");
      if (s.v_m && s.delta_r) fail("wave.rarefaction takes v_m or delta_r, not both");
      if (r.contains("eps")) s.eps = number(r.at("eps"), "wave.rarefaction.eps");
      if (r.contains("q")) s.q = number(r.at("q"), "wave.rarefaction.q");
      if (!(s.eps > 0.0 && s.eps < 1.0)) fail("wave.rarefaction.eps must lie in (0, 1)");
      if (!(s.q > 16.0)) fail("wave.rarefaction.q must exceed 16");
    }
    if (w.contains("times")) {
      s.wave_times = number_list(w.at("times"), "wave.times");
      for (double t : s.wave_times) {
        if (t < 0.0) fail("wave.times must be nonnegative");
      }
    }
  }
  if (!s.v_m && !s.delta_r) s.delta_r = 0.0;

  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    only_keys(g, "grid", {"L", "N"});
    if (g.contains("L")) {
      const auto& L = g.at("L");
      if (L.is_string()) {
        if (L.get<std::string>() != "auto") fail("grid.L must be a number or \"auto\"");
      } else {
        s.L = positive(L, "grid.L");
      }
    }
    if (g.contains("N")) {
      if (!g.at("N").is_number_integer()) fail("grid.N must be an integer");
      s.N = g.at("N").get<int>();
    }
    if (s.N < 64) fail("grid.N must be at least 64");
  }

  if (j.contains("sim")) {
    const auto& m = j.at("sim");
    only_keys(m, "sim", {"cfl", "t_end", "output_stride", "decay_target"});
    if (m.contains("cfl")) s.sim.cfl = positive(m.at("cfl"), "sim.cfl");
    if (m.contains("t_end")) s.sim.t_end = positive(m.at("t_end"), "sim.t_end");
    if (m.contains("output_stride")) s.sim.output_stride = positive(m.at("output_stride"), "sim.output_stride");
    if (m.contains("decay_target")) s.sim.decay_target = positive(m.at("decay_target"), "sim.decay_target");
    if (s.sim.cfl > 1.0) fail("sim.cfl must not exceed 1");
  }

  if (j.contains("perturbation")) {
    const auto& p = j.at("perturbation");
    only_keys(p, "perturbation", {"kind", "amplitude", "width", "start"});
    if (p.contains("kind")) {
      if (!p.at("kind").is_string()) fail("perturbation.kind must be a string");
      s.pert.kind = kind_from(p.at("kind").get<std::string>());
    }
    if (p.contains("amplitude")) s.pert.amplitude = number(p.at("amplitude"), "perturbation.amplitude");
    if (p.contains("width")) s.pert.width = number(p.at("width"), "perturbation.width");
    if (p.contains("start")) s.pert.start = number(p.at("start"), "perturbation.start");
    if (s.pert.width < 0.0 || s.pert.start < 0.0) fail("perturbation.width and start must be nonnegative");
  }

  if (j.contains("classify")) {
    const auto& c = j.at("classify");
    only_keys(c, "classify", {"gamma", "u_plus", "theta_minus", "random"});
    if (c.contains("gamma")) {
      s.classify.gammas = number_list(c.at("gamma"), "classify.gamma");
      for (double g : s.classify.gammas) {
        if (!(g > 1.0)) fail("classify.gamma values must exceed 1");
      }
    }
    if (c.contains("u_plus")) {
      const auto& u = c.at("u_plus");
      only_keys(u, "classify.u_plus", {"from", "to", "count", "scale", "open"});
      s.classify.u_from = u.contains("from") ? number(u.at("from"), "classify.u_plus.from") : 0.0;
      if (!u.contains("to")) fail("classify.u_plus needs 'to'");
      s.classify.u_to = positive(u.at("to"), "classify.u_plus.to");
      if (!u.contains("count") || !u.at("count").is_number_integer()) fail("classify.u_plus.count must be an integer");
      s.classify.u_count = u.at("count").get<int>();
      if (s.classify.u_count < 1) fail("classify.u_plus.count must be positive");
      if (u.contains("scale")) {
        if (!u.at("scale").is_string()) fail("classify.u_plus.scale must be a string");
        s.classify.scale = u.at("scale").get<std::string>();
        if (s.classify.scale != "absolute" && s.classify.scale != "c_tilde" && s.classify.scale != "c_sound") {
          fail("classify.u_plus.scale must be absolute, c_tilde or c_sound");
        }
      }
      if (u.contains("open")) {
        if (!u.at("open").is_boolean()) fail("classify.u_plus.open must be a boolean");
        s.classify.endpoint_open = u.at("open").get<bool>();
      }
      if (!(s.classify.u_from >= 0.0 && s.classify.u_to > s.classify.u_from)) {
        fail("classify.u_plus needs 0 <= from < to");
      }
    }
    if (c.contains("theta_minus")) {
      s.classify.theta_minus = number_list(c.at("theta_minus"), "classify.theta_minus");
      for (double t : s.classify.theta_minus) {
        if (!(t > 0.0)) fail("classify.theta_minus values must be positive");
      }
    }
    if (c.contains("random")) {
      if (!c.at("random").is_number_integer() || c.at("random").get<int>() < 0) {
        fail("classify.random must be a nonnegative integer");
      }
      s.classify.random = c.at("random").get<int>();
      if (s.classify.random > 0 && s.classify.u_count == 0) fail("classify.random needs a u_plus range");
    }
  }

  if (j.contains("seed")) {
    const auto& sd = j.at("seed");
    if (!sd.is_number_integer() || (!sd.is_number_unsigned() && sd.get<long long>() < 0)) {
      fail("seed must be a nonnegative integer");
    }
    s.seed = j.at("seed").get<std::uint64_t>();
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read config '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(j);
}

json to_json(const Scenario& s, std::optional<double> length) {
  json j;
  j["gas"] = {{"R", s.gas.R()}, {"gamma", s.gas.gamma()}, {"A", s.gas.A()}, {"kappa", s.gas.kappa()}};
  j["z_plus"] = {{"v", s.z_plus.v}, {"u", s.z_plus.u}, {"theta", s.z_plus.theta}};
  json bl = json::object();
  if (s.theta_minus) bl["theta_minus"] = *s.theta_minus;
  if (s.theta_minus_offset) bl["theta_minus_offset"] = *s.theta_minus_offset;
  json rare{{"eps", s.eps}, {"q", s.q}};
  if (s.v_m) rare["v_m"] = *s.v_m;
  if (s.delta_r) rare["delta_r"] = *s.delta_r;
  j["wave"] = {{"bl", bl}, {"rarefaction", rare}, {"times", s.wave_times}};
  const auto L = length ? length : s.L;
  j["grid"] = {{"L", L ? json(*L) : json("auto")}, {"N", s.N}};
  j["sim"] = {{"cfl", s.sim.cfl},
              {"t_end", s.sim.t_end},
              {"output_stride", s.sim.output_stride},
              {"decay_target", s.sim.decay_target}};
  j["perturbation"] = {{"kind", std::string(to_string(s.pert.kind))},
                       {"amplitude", s.pert.amplitude},
                       {"width", s.pert.width},
                       {"start", s.pert.start}};
  const auto& c = s.classify;
  json cl{{"gamma", c.gammas}, {"theta_minus", c.theta_minus}, {"random", c.random}};
  if (c.u_count > 0) {
    cl["u_plus"] = {{"from", c.u_from}, {"to", c.u_to}, {"count", c.u_count}, {"scale", c.scale}, {"open", c.endpoint_open}};
  }
  j["classify"] = cl;
  j["seed"] = s.seed;
  return j;
}

CompositeSpec composite_spec(const Scenario& s) {
  CompositeSpec spec{.gas = s.gas, .z_plus = s.z_plus, .eps = s.eps, .q = s.q};
  spec.v_m = s.v_m;
  spec.delta_r = s.delta_r;
  const LagState zm = s.v_m ? connect_zm(s.z_plus, *s.v_m, s.gas)
                            : RareSetup::from_strength(s.gas, s.z_plus, *s.delta_r, s.eps, s.q).z_minus;
  spec.theta_minus = s.theta_minus_for(zm.theta);
  return spec;
}

CompositeWave build_wave(const Scenario& s) { return CompositeWave::build(composite_spec(s)); }

Grid resolve_grid(const Scenario& s, const CompositeWave& wave) {
  return Grid{s.L ? *s.L : default_length(wave, s.sim.t_end), s.N};
}

}  // namespace inflow::cli
