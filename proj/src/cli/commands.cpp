#include "inflow/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace inflow::cli {

namespace fs = std::filesystem;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Divergence:
    case ErrorKind::StepUnderflow:
    case ErrorKind::PositivityViolated:
    case ErrorKind::NonFinite:
    case ErrorKind::NoBracket:
    case ErrorKind::InsufficientTail:
    case ErrorKind::EnvelopeViolated:
      return 3;
    default:
      return 2;
  }
}

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", t);
  return buf;
}

class Csv {
 public:
  Csv(const fs::path& path, const nlohmann::json& config, const std::vector<std::string>& columns) : out_(path) {
    if (!out_) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
    out_ << "# schema " << kSchema << "; config " << config.dump() << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }
  Csv& operator<<(double x) { return cell(num(x)); }
  Csv& operator<<(const std::string& s) { return cell(s); }
  Csv& operator<<(std::string_view s) { return cell(std::string(s)); }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  Csv& cell(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  std::ofstream out_;
  bool first_ = true;
};

void make_out_dir(const fs::path& p) {
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory '" + p.string() + "': " + ec.message());
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < threads; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct ClassifyRow {
  double gamma, u, theta_minus;
  double mach, tilde_mach;
  BlExistence ex;
};

}  // namespace

void cmd_classify(const Scenario& s, const CommandOptions& o) {
  const auto& c = s.classify;
  const std::vector<double> gammas = c.gammas.empty() ? std::vector<double>{s.gas.gamma()} : c.gammas;
  const double theta_plus = s.z_plus.theta;
  std::vector<double> thetas = c.theta_minus;
  if (thetas.empty()) thetas.push_back(s.theta_minus ? *s.theta_minus : theta_plus + s.theta_minus_offset.value_or(0.0));

  // u+ samples as fractions of the scale; the random extras come from the seed
  std::vector<double> fractions;
  if (c.u_count == 0) {
    fractions.push_back(s.z_plus.u);
  } else {
    for (int k = 0; k < c.u_count; ++k) {
      const double f = c.endpoint_open ? (k + 1.0) / (c.u_count + 1.0)
                                       : (c.u_count == 1 ? 0.0 : double(k) / (c.u_count - 1));
      fractions.push_back(c.u_from + (c.u_to - c.u_from) * f);
    }
    std::mt19937_64 rng(s.seed);
    for (int k = 0; k < c.random; ++k) {
      const double f = double(rng() >> 11) * 0x1.0p-53;
      fractions.push_back(c.u_from + (c.u_to - c.u_from) * f);
    }
  }

  std::vector<ClassifyRow> rows;
  for (double g : gammas) {
    const double scale = c.u_count == 0 || c.scale == "absolute" ? 1.0
                         : c.scale == "c_tilde"                  ? std::sqrt(s.gas.R() * theta_plus)
                                                                 : std::sqrt(g * s.gas.R() * theta_plus);
    for (double th : thetas) {
      for (double f : fractions) {
        const double u = f * scale;
        if (!(u > 0.0)) throw Error(ErrorKind::Config, "classify needs u+ > 0");
        rows.push_back({g, u, th, 0.0, 0.0, {}});
      }
    }
  }

  parallel_for(rows.size(), o.threads, [&](std::size_t i) {
    auto& r = rows[i];
    const GasParams gas(s.gas.R(), r.gamma, s.gas.A(), s.gas.kappa());
    const EulerState far{1.0 / s.z_plus.v, r.u, theta_plus};
    r.mach = mach(far, gas);
    r.tilde_mach = tilde_mach(far, gas);
    r.ex = analyze_existence(BlSetup{gas, far, r.theta_minus});
  });

  make_out_dir(o.out);
  Csv csv(o.out / "classify.csv", to_json(s),
          {"gamma[-]", "u_plus[velocity]", "theta_plus[temperature]", "theta_minus[temperature]", "mach[-]",
           "tilde_mach[-]", "case", "subcase", "w2_star[-]", "w2_sup[-]", "window_lo[-]", "window_hi[-]", "exists",
           "admissible"});
  for (const auto& r : rows) {
    csv << r.gamma << r.u << theta_plus << r.theta_minus << r.mach << r.tilde_mach << to_string(r.ex.kase)
        << to_string(r.ex.subcase) << (r.ex.w2_star ? *r.ex.w2_star : NAN) << r.ex.w2_sup << r.ex.window_lo
        << r.ex.window_hi << std::string(r.ex.exists ? "1" : "0") << std::string(r.ex.admissible ? "1" : "0");
    csv.end_row();
  }
  if (o.log) *o.log << "classify: " << rows.size() << " rows -> " << (o.out / "classify.csv").string() << '\n';
}

void cmd_profile(const Scenario& s, const CommandOptions& o) {
  const auto wave = build_wave(s);
  const auto& bl = wave.bl();
  std::optional<DecayReport> rep;
  std::string status = "ok";
  try {
    rep = verify_decay(bl);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientTail) throw;
    status = "insufficient_tail";
  }

  make_out_dir(o.out);
  const auto cfg = to_json(s);
  {
    Csv csv(o.out / "bl_profile.csv", cfg,
            {"xi[mass]", "w2[-]", "v[volume]", "u[velocity]", "theta[temperature]", "residual_mass[-]",
             "residual_momentum[-]"});
    const auto xi = bl.xi();
    const auto w2 = bl.w2();
    const auto st = bl.states();
    const auto rm = bl.residual_mass();
    const auto rp = bl.residual_momentum();
    for (std::size_t i = 0; i < xi.size(); ++i) {
      csv << xi[i] << w2[i] << st[i].v << st[i].u << st[i].theta << rm[i] << rp[i];
      csv.end_row();
    }
  }
  Csv csv(o.out / "bl_decay.csv", cfg,
          {"case", "w2_0[-]", "delta_bar[temperature]", "kind", "expected_rate[1/length]", "fitted_rate[1/length]",
           "relative_error[-]", "r2_log[-]", "r2_reciprocal[-]", "tail_samples", "rate_ok", "status"});
  const auto& ex = bl.existence();
  csv << to_string(ex.kase) << bl.setup().w2_0() << bl.delta_bar();
  if (rep) {
    csv << std::string(rep->kind == DecayKind::Exponential ? "exponential" : "algebraic") << rep->expected_rate
        << rep->fitted_rate << rep->relative_error << rep->r2_log << rep->r2_reciprocal
        << std::to_string(rep->tail_samples) << std::string(rep->rate_ok ? "1" : "0");
  } else {
    csv << std::string("none") << NAN << NAN << NAN << NAN << NAN << std::string("0") << std::string("0");
  }
  csv << status;
  csv.end_row();
  if (o.log) {
    *o.log << "profile: " << bl.xi().size() << " samples, case " << to_string(ex.kase);
    if (rep) *o.log << ", fitted rate " << rep->fitted_rate << " vs " << rep->expected_rate;
    *o.log << '\n';
  }
}

void cmd_wave(const Scenario& s, const CommandOptions& o) {
  const auto wave = build_wave(s);
  const Grid g = resolve_grid(s, wave);
  g.validate();
  make_out_dir(o.out);
  const auto cfg = to_json(s, g.L);
  for (double t : s.wave_times) {
    Csv csv(o.out / ("wave_t" + time_tag(t) + ".csv"), cfg,
            {"xi[mass]", "v_hat[volume]", "u_hat[velocity]", "theta_hat[temperature]", "G1[pressure/mass]",
             "G2[energy flux/mass]"});
    for (int i = 0; i <= g.N; ++i) {
      const double xi = g.xi(i);
      const auto h = wave.hat_sample(t, xi);
      const auto src = wave.sources(t, xi);
      csv << xi << h.state.v << h.state.u << h.state.theta << src.G1 << src.G2;
      csv.end_row();
    }
  }
  if (o.log) *o.log << "wave: " << s.wave_times.size() << " snapshots on " << g.N + 1 << " nodes\n";
}

void cmd_simulate(const Scenario& s, const CommandOptions& o) {
  const auto wave = build_wave(s);
  const Grid g = resolve_grid(s, wave);
  auto state = init(wave, g, s.pert, s.sim);
  const WaveOnGrid ref(wave, g);

  make_out_dir(o.out);
  const auto cfg = to_json(s, g.L);
  Csv norms(o.out / "norms.csv", cfg,
            {"t[time]", "L2", "H1", "H2", "Linf", "energy", "bnd_phi_xi", "bnd_psi_xi", "bnd_zeta_xi"});
  const auto res = run(state, ref, [&](const SimState& st, const NormRecord& r) {
    norms << r.t << r.l2 << r.h1 << r.h2 << r.linf << r.energy << r.bnd_phi_xi << r.bnd_psi_xi << r.bnd_zeta_xi;
    norms.end_row();
    const auto z = ref.at(st.t);
    Csv snap(o.out / ("snapshot_t" + time_tag(st.t) + ".csv"), cfg,
             {"xi[mass]", "v[volume]", "u[velocity]", "theta[temperature]", "phi[volume]", "psi[velocity]",
              "zeta[temperature]"});
    for (int i = 0; i <= g.N; ++i) {
      snap << g.xi(i) << st.v[i] << st.u[i] << st.theta[i] << st.v[i] - z.v[i] << st.u[i] - z.u[i]
           << st.theta[i] - z.theta[i];
      snap.end_row();
    }
    if (o.log) *o.log << "  t=" << r.t << " Linf=" << r.linf << " energy=" << r.energy << '\n';
  });
  Csv sum(o.out / "summary.csv", cfg,
          {"t_end[time]", "sup_initial", "sup_final", "ratio", "decay_target", "decayed", "n_initial", "n_max",
           "steps", "L[mass]", "N"});
  sum << state.t << res.sup_initial << res.sup_final << res.ratio << s.sim.decay_target
      << std::string(res.decayed ? "1" : "0") << res.history.front().n_norm << res.n_max << std::to_string(state.steps)
      << g.L << std::to_string(g.N);
  sum.end_row();
  if (o.log) {
    *o.log << "simulate: " << state.steps << " steps, sup ratio " << res.ratio << (res.decayed ? " (decayed)" : "")
           << '\n';
  }
}

namespace {

std::vector<std::vector<double>> read_table(const fs::path& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot read '" + path.string() + "' (run simulate first)");
  std::string line;
  std::getline(in, line);
  if (line.rfind(std::string("# schema ") + kSchema, 0) != 0) {
    throw Error(ErrorKind::Config, "'" + path.string() + "' has an unknown schema line");
  }
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != columns) throw Error(ErrorKind::Config, "malformed row in '" + path.string() + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Config, "'" + path.string() + "' has no data rows");
  return rows;
}

}  // namespace

void cmd_report(const Scenario& s, const CommandOptions& o) {
  const auto norms = read_table(o.out / "norms.csv", 9);
  const auto summary = read_table(o.out / "summary.csv", 11);
  const auto& sm = summary.front();

  struct Check {
    std::string name;
    double value, threshold;
    bool pass;
  };
  std::vector<Check> checks;
  const double ratio = sm[3];
  checks.push_back({"decay_ratio", ratio, s.sim.decay_target, ratio <= s.sim.decay_target});

  double worst_rise = 0.0;
  for (std::size_t i = 2; i < norms.size(); ++i) {
    const double prev = norms[i - 1][4];
    if (prev > 0.0) worst_rise = std::max(worst_rise, norms[i][4] / prev - 1.0);
  }
  checks.push_back({"sup_nonincreasing", worst_rise, 0.05, worst_rise <= 0.05});

  double e_min = HUGE_VAL, e_max = 0.0;
  for (const auto& r : norms) {
    e_min = std::min(e_min, r[5]);
    e_max = std::max(e_max, r[5]);
  }
  const double e0 = norms.front()[5];
  checks.push_back({"energy_nonnegative", e_min, 0.0, e_min >= 0.0});
  const double e_ratio = e0 > 0.0 ? e_max / e0 : (e_max > 0.0 ? HUGE_VAL : 0.0);
  checks.push_back({"energy_bounded", e_ratio, 2.0, e_ratio <= 2.0});
  const double n_ratio = sm[6] > 0.0 ? sm[7] / sm[6] : HUGE_VAL;
  checks.push_back({"n_norm_bounded", n_ratio, 2.0, n_ratio <= 2.0});

  Csv csv(o.out / "report.csv", to_json(s), {"check", "value", "threshold", "verdict"});
  for (const auto& c : checks) {
    csv << c.name << c.value << c.threshold << std::string(c.pass ? "PASS" : "FAIL");
    csv.end_row();
    if (o.log) *o.log << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value << " threshold=" << c.threshold << '\n';
  }
}

}  // namespace inflow::cli
