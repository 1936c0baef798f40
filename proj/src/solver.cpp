#include "inflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "inflow/error.hpp"

namespace inflow {

void Grid::validate() const {
  if (N < 64) throw Error(ErrorKind::InvalidArgument, "grid needs N >= 64 (got " + std::to_string(N) + ")");
  if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::InvalidArgument, "grid length must be positive");
}

Triple Perturbation::at(double xi, double L) const {
  if (custom) return custom(xi);
  const double w = width > 0.0 ? width : L / 10.0;
  if (kind == Kind::None || !(xi > start) || !(xi < start + w)) return {};
  const double s = std::sin(std::numbers::pi * (xi - start) / w);
  const double b = amplitude * s * s;
  switch (kind) {
    case Kind::Phi: return {b, 0.0, 0.0};
    case Kind::Psi: return {0.0, b, 0.0};
    case Kind::Zeta: return {0.0, 0.0, b};
    case Kind::All: return {b, b, b};
    case Kind::None: break;
  }
  return {};
}

namespace {

void check_positive(const SimState& s) {
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    if (!(s.v[i] > 0.0) || !(s.theta[i] > 0.0)) {
      throw Error(ErrorKind::PositivityViolated, "state not positive at node " + std::to_string(i));
    }
  }
}

}  // namespace

SimState make_state(const GasParams& g, const Grid& grid, const SimConfig& cfg, double s_minus,
                    const LagState& left, const LagState& right, const std::function<LagState(double)>& init) {
  grid.validate();
  SimState s{g, grid, cfg, s_minus, left, right};
  const int n = grid.N + 1;
  s.v.resize(n);
  s.u.resize(n);
  s.theta.resize(n);
  for (int i = 0; i < n; ++i) {
    const LagState z = i == 0 ? left : i == grid.N ? right : init(grid.xi(i));
    s.v[i] = z.v;
    s.u[i] = z.u;
    s.theta[i] = z.theta;
  }
  check_positive(s);
  return s;
}

SimState init(const CompositeWave& wave, const Grid& grid, const Perturbation& pert, const SimConfig& cfg) {
  grid.validate();
  const double L = grid.L;
  auto nonzero = [](const Triple& p) { return p.v != 0.0 || p.u != 0.0 || p.theta != 0.0; };
  if (nonzero(pert.at(0.0, L))) {
    throw Error(ErrorKind::CompatibilityViolated, "perturbation must vanish at xi = 0");
  }
  if (!pert.custom && pert.kind != Perturbation::Kind::None) {
    const double w = pert.width > 0.0 ? pert.width : L / 10.0;
    if (pert.start < 0.0 || pert.start + w > 0.5 * L) {
      throw Error(ErrorKind::CompatibilityViolated, "perturbation support must lie inside (0, L/2)");
    }
  }
  for (int i = 0; i <= grid.N; ++i) {
    const double xi = grid.xi(i);
    if (xi >= 0.5 * L && nonzero(pert.at(xi, L))) {
      throw Error(ErrorKind::CompatibilityViolated,
                  "perturbation support must lie inside (0, L/2) (nonzero at xi=" + std::to_string(xi) + ")");
    }
  }

  SimState s{wave.gas(), grid, cfg, wave.s_minus(), wave.z_minus(), wave.z_plus()};
  const int n = grid.N + 1;
  s.v.resize(n);
  s.u.resize(n);
  s.theta.resize(n);
  for (int i = 0; i < n; ++i) {
    const double xi = grid.xi(i);
    const auto z = wave.hat_sample(0.0, xi).state;
    const auto p = pert.at(xi, L);
    s.v[i] = z.v + p.v;
    s.u[i] = z.u + p.u;
    s.theta[i] = z.theta + p.theta;
  }
  // node 0 carries the boundary data exactly (the perturbation vanishes there)
  s.v[0] = s.bc_left.v;
  s.u[0] = s.bc_left.u;
  s.theta[0] = s.bc_left.theta;
  check_positive(s);
  return s;
}

double default_length(const CompositeWave& wave, double t_end) {
  const auto& bl = wave.bl();
  double L = 0.0;
  if (bl.decay_kind() == DecayKind::Exponential && bl.decay_constant() > 0.0) {
    // 30 e-folds of the layer, converted from x to the mass coordinate
    L = 30.0 / (bl.decay_constant() * wave.z_m().v);
  }
  const auto& zp = wave.z_plus();
  const double s = wave.s_minus();
  L = std::max(L, 1.5 * lambda3(zp.v, wave.rare().S, wave.gas()) * (1.0 + t_end) - s * t_end);
  if (wave.rare().delta_r > 0.0) L = std::max(L, wave_support(t_end, wave.rare(), s).xi_hi);
  return L;
}

double stable_dt(const SimState& s) {
  const double gR = s.gas.gamma() * s.gas.R();
  const double as = std::abs(s.s_minus);
  double sigma = 0.0;
  double vmin = s.v[0];
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    sigma = std::max(sigma, as + std::sqrt(gR * s.theta[i]) / s.v[i]);
    vmin = std::min(vmin, s.v[i]);
  }
  const double h = s.grid.dxi();
  return s.config.cfl * std::min(h / sigma, h * h * s.gas.cv() * vmin / (2.0 * s.gas.kappa()));
}

namespace {

void slopes(const std::vector<double>& q, std::vector<double>& d) {
  const std::size_t n = q.size();
  d[0] = q[1] - q[0];
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 0.5 * (q[i + 1] - q[i - 1]);
  d[n - 1] = q[n - 1] - q[n - 2];
}

// scratch buffers reused across calls on the same thread
struct Work {
  std::vector<double> dv, du, dth, fv, fu, fe;
  void resize(std::size_t n) {
    for (auto* a : {&dv, &du, &dth}) a->resize(n);
    for (auto* a : {&fv, &fu, &fe}) a->resize(n - 1);
  }
};

Work& work() {
  thread_local Work w;
  return w;
}

}  // namespace

void rhs(const SimState& s, double t, const std::vector<double>& v, const std::vector<double>& u,
         const std::vector<double>& th, std::vector<Triple>& out, const StepHooks& hooks,
         kernels::FaceFluxFn flux) {
  const std::size_t n = v.size();
  if (!flux) flux = kernels::select_face_flux();
  Work& w = work();
  w.resize(n);
  slopes(v, w.dv);
  slopes(u, w.du);
  slopes(th, w.dth);
  const double h = s.grid.dxi();
  const kernels::FaceParams p{s.s_minus, s.gas.R(), s.gas.gamma(), s.gas.cv(), s.gas.kappa(), 1.0 / h};
  flux(p, {v.data(), u.data(), th.data(), w.dv.data(), w.du.data(), w.dth.data()},
       {w.fv.data(), w.fu.data(), w.fe.data()}, n - 1);
  out.assign(n, Triple{});
  const double inv_h = 1.0 / h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i].v = -(w.fv[i] - w.fv[i - 1]) * inv_h;
    out[i].u = -(w.fu[i] - w.fu[i - 1]) * inv_h;
    out[i].theta = -(w.fe[i] - w.fe[i - 1]) * inv_h;
  }
  if (hooks.source) {
    hooks.source(t, s.grid, out);
    out.front() = Triple{};
    out.back() = Triple{};
  }
}

namespace {

struct Conserved {
  std::vector<double> v, u, e;
};

void to_conserved(const SimState& s, const std::vector<double>& v, const std::vector<double>& u,
                  const std::vector<double>& th, Conserved& c) {
  const double cv = s.gas.cv();
  const std::size_t n = v.size();
  c.v = v;
  c.u = u;
  c.e.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.e[i] = cv * th[i] + 0.5 * (u[i] * u[i]);
}

// primitives from conserved; false on loss of positivity or finiteness
bool to_primitive(const SimState& s, const Conserved& c, std::vector<double>& v, std::vector<double>& u,
                  std::vector<double>& th) {
  const double cv = s.gas.cv();
  const std::size_t n = c.v.size();
  v = c.v;
  u = c.u;
  th.resize(n);
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    th[i] = (c.e[i] - 0.5 * (u[i] * u[i])) / cv;
    ok = ok && v[i] > 0.0 && th[i] > 0.0 && std::isfinite(u[i]);
  }
  return ok;
}

void apply_bc(const SimState& s, double t, const StepHooks& hooks, std::vector<double>& v, std::vector<double>& u,
              std::vector<double>& th) {
  const LagState l = hooks.left ? hooks.left(t) : s.bc_left;
  const LagState r = hooks.right ? hooks.right(t) : s.far_field;
  v.front() = l.v;
  u.front() = l.u;
  th.front() = l.theta;
  v.back() = r.v;
  u.back() = r.u;
  th.back() = r.theta;
}

// one SSP-RK3 step of size dt; false if any stage left the admissible set
bool try_step(SimState& s, double dt, const StepHooks& hooks) {
  const std::size_t n = s.v.size();
  const double t = s.t;
  Conserved c0, c;
  to_conserved(s, s.v, s.u, s.theta, c0);
  std::vector<double> v = s.v, u = s.u, th = s.theta;
  std::vector<Triple> k;

  auto stage = [&](double t_eval, double t_new, double a0, double a1) {
    rhs(s, t_eval, v, u, th, k, hooks);
    to_conserved(s, v, u, th, c);
    for (std::size_t i = 0; i < n; ++i) {
      c.v[i] = a0 * c0.v[i] + a1 * (c.v[i] + dt * k[i].v);
      c.u[i] = a0 * c0.u[i] + a1 * (c.u[i] + dt * k[i].u);
      c.e[i] = a0 * c0.e[i] + a1 * (c.e[i] + dt * k[i].theta);
    }
    const bool ok = to_primitive(s, c, v, u, th);
    apply_bc(s, t_new, hooks, v, u, th);
    return ok;
  };
  if (!stage(t, t + dt, 0.0, 1.0)) return false;
  if (!stage(t + dt, t + 0.5 * dt, 0.75, 0.25)) return false;
  if (!stage(t + 0.5 * dt, t + dt, 1.0 / 3.0, 2.0 / 3.0)) return false;
  s.v = std::move(v);
  s.u = std::move(u);
  s.theta = std::move(th);
  return true;
}

}  // namespace

double step(SimState& s, double dt_max, const StepHooks& hooks) {
  double dt = stable_dt(s);
  if (!std::isfinite(dt) || !(dt > 0.0)) throw Error(ErrorKind::NonFinite, "non-finite time step");
  if (dt_max > 0.0) dt = std::min(dt, dt_max);
  for (int attempt = 0; attempt <= 10; ++attempt) {
    if (try_step(s, dt, hooks)) {
      s.t += dt;
      ++s.steps;
      return dt;
    }
    dt *= 0.5;
  }
  bool finite = true;
  for (std::size_t i = 0; i < s.v.size(); ++i) {
    finite = finite && std::isfinite(s.v[i]) && std::isfinite(s.u[i]) && std::isfinite(s.theta[i]);
  }
  if (!finite) throw Error(ErrorKind::NonFinite, "non-finite state at t=" + std::to_string(s.t));
  throw Error(ErrorKind::PositivityViolated,
              "positivity lost after 10 step halvings at t=" + std::to_string(s.t));
}

void advance_to(SimState& s, double t_target, const StepHooks& hooks) {
  while (s.t < t_target) {
    const double remaining = t_target - s.t;
    const double dt = stable_dt(s);
    if (dt >= remaining) {
      step(s, remaining, hooks);
      // land exactly; a halved retry keeps us short and loops again
      if (std::abs(s.t - t_target) <= 1e-12 * std::max(1.0, t_target)) s.t = t_target;
    } else {
      step(s, 0.0, hooks);
    }
  }
}

WaveOnGrid::WaveOnGrid(const CompositeWave& wave, const Grid& grid) : wave_(&wave), grid_(grid) {
  bl_.reserve(grid.N + 1);
  for (int i = 0; i <= grid.N; ++i) bl_.push_back(wave.bl().at_lagrangian(grid.xi(i)));
}

WaveOnGrid::Field WaveOnGrid::at(double t) const {
  const int n = grid_.N + 1;
  Field f;
  for (auto* a : {&f.v, &f.u, &f.theta, &f.v_t, &f.u_t, &f.theta_t}) a->resize(n);
  const auto& zm = wave_->z_m();
  const double s = wave_->s_minus();
  const RareSetup& r = wave_->rare();
  for (int i = 0; i < n; ++i) {
    const auto& a = bl_[i].offset;
    Triple b, bt;
    if (r.delta_r > 0.0) {
      const auto rs = sample_smooth(t, grid_.xi(i), r, s);
      b = rs.offset;
      bt = rs.dt;
    }
    f.v[i] = zm.v + a.v + b.v;
    f.u[i] = zm.u + a.u + b.u;
    f.theta[i] = zm.theta + a.theta + b.theta;
    f.v_t[i] = bt.v;
    f.u_t[i] = bt.u;
    f.theta_t[i] = bt.theta;
  }
  return f;
}

namespace {

// Phi(s) = s - 1 - ln s at s = 1 + x, series for small x to avoid cancellation
double big_phi(double x) {
  if (std::abs(x) < 1e-3) return x * x * (0.5 - x * (1.0 / 3.0 - x * (0.25 - x * (0.2 - x / 6.0))));
  return x - std::log1p(x);
}

struct Sobolev {
  double l2sq = 0.0, d1sq = 0.0, d2sq = 0.0, linf = 0.0;
  double trace = 0.0;  // one-sided first derivative at node 0
};

Sobolev sobolev(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  Sobolev out;
  auto trap = [&](auto&& g) {
    double acc = 0.5 * (g(0) + g(n - 1));
    for (std::size_t i = 1; i + 1 < n; ++i) acc += g(i);
    return acc * h;
  };
  auto d1 = [&](std::size_t i) {
    if (i == 0) return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    if (i == n - 1) return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return (f[i + 1] - f[i - 1]) / (2.0 * h);
  };
  auto d2 = [&](std::size_t i) {
    if (i == 0) return (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
    if (i == n - 1) return (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
    return (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
  };
  out.l2sq = trap([&](std::size_t i) { return f[i] * f[i]; });
  out.d1sq = trap([&](std::size_t i) { const double d = d1(i); return d * d; });
  out.d2sq = trap([&](std::size_t i) { const double d = d2(i); return d * d; });
  for (double x : f) out.linf = std::max(out.linf, std::abs(x));
  out.trace = d1(0);
  return out;
}

}  // namespace

NormRecord diagnostics(const SimState& s, const WaveOnGrid& ref) {
  const auto z = ref.at(s.t);
  const std::size_t n = s.v.size();
  const double h = s.grid.dxi();
  const double R = s.gas.R();
  const double cv = s.gas.cv();
  std::vector<double> phi(n), psi(n), zeta(n), energy(n);
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = s.v[i] - z.v[i];
    psi[i] = s.u[i] - z.u[i];
    zeta[i] = s.theta[i] - z.theta[i];
    energy[i] = R * z.theta[i] * big_phi(phi[i] / z.v[i]) + 0.5 * psi[i] * psi[i] +
                cv * z.theta[i] * big_phi(zeta[i] / z.theta[i]);
  }
  const auto a = sobolev(phi, h), b = sobolev(psi, h), c = sobolev(zeta, h);

  NormRecord rec;
  rec.t = s.t;
  const double l2sq = a.l2sq + b.l2sq + c.l2sq;
  const double h1sq = l2sq + a.d1sq + b.d1sq + c.d1sq;
  const double h2sq = h1sq + a.d2sq + b.d2sq + c.d2sq;
  rec.l2 = std::sqrt(l2sq);
  rec.h1 = std::sqrt(h1sq);
  rec.h2 = std::sqrt(h2sq);
  rec.linf = std::max({a.linf, b.linf, c.linf});
  double e = 0.5 * (energy.front() + energy.back());
  for (std::size_t i = 1; i + 1 < n; ++i) e += energy[i];
  rec.energy = e * h;
  rec.bnd_phi_xi = a.trace;
  rec.bnd_psi_xi = b.trace;
  rec.bnd_zeta_xi = c.trace;

  // time derivatives of the perturbation from the discrete right-hand side
  std::vector<Triple> k;
  rhs(s, s.t, s.v, s.u, s.theta, k, {});
  std::vector<double> pt(n), qt(n), rt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th_t = (k[i].theta - s.u[i] * k[i].u) / cv;
    pt[i] = k[i].v - z.v_t[i];
    qt[i] = k[i].u - z.u_t[i];
    rt[i] = th_t - z.theta_t[i];
  }
  // the Dirichlet rows carry the prescribed data, so their time derivative is that of z^
  pt.front() = qt.front() = rt.front() = 0.0;
  pt.back() = qt.back() = rt.back() = 0.0;
  const auto at = sobolev(pt, h), bt = sobolev(qt, h), ct = sobolev(rt, h);
  const double t1sq = at.l2sq + bt.l2sq + ct.l2sq + at.d1sq + bt.d1sq + ct.d1sq;
  rec.n_norm = rec.h2 + std::sqrt(t1sq);
  return rec;
}

RunResult run(SimState& s, const WaveOnGrid& ref,
              const std::function<void(const SimState&, const NormRecord&)>& on_output) {
  RunResult res;
  const double t_end = s.config.t_end;
  const double stride = s.config.output_stride;
  auto record = [&]() {
    const auto rec = diagnostics(s, ref);
    res.history.push_back(rec);
    res.n_max = std::max(res.n_max, rec.n_norm);
    if (on_output) on_output(s, rec);
  };
  record();
  int k = 1;
  while (s.t < t_end) {
    double next = stride > 0.0 ? std::min(t_end, stride * k) : t_end;
    if (next <= s.t) next = t_end;
    advance_to(s, next);
    ++k;
    record();
  }
  res.sup_initial = res.history.front().linf;
  res.sup_final = res.history.back().linf;
  if (res.sup_initial > 0.0) {
    res.ratio = res.sup_final / res.sup_initial;
  } else {
    res.ratio = res.sup_final > 0.0 ? HUGE_VAL : 0.0;
  }
  res.decayed = res.ratio <= s.config.decay_target;
  return res;
}

}  // namespace inflow
