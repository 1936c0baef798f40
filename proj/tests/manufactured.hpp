#pragma once

// Manufactured smooth solution for the shifted system: every field is a
// travelling sine, and the residual it leaves is injected as a source.

#include <cmath>

#include "inflow/solver.hpp"

namespace inflow::testing {

// smooth travelling profile f = A + a sin(k xi + c - w t) with its derivatives
struct Mode {
  double A, a, k, c, w;
  double f(double t, double x) const { return A + a * std::sin(k * x + c - w * t); }
  double ft(double t, double x) const { return -a * w * std::cos(k * x + c - w * t); }
  double fx(double t, double x) const { return a * k * std::cos(k * x + c - w * t); }
  double fxx(double t, double x) const { return -a * k * k * std::sin(k * x + c - w * t); }
};

struct Manufactured {
  GasParams gas{1.0, 1.4, 1.0, 1.0};
  Mode v{1.0, 0.1, 0.7, 0.3, 0.5};
  Mode u{1.0, 0.2, 0.9, 1.1, -0.4};
  Mode th{1.2, 0.15, 0.6, 2.0, 0.3};
  double s = -1.0;

  LagState at(double t, double x) const { return {v.f(t, x), u.f(t, x), th.f(t, x)}; }

  Triple source(double t, double x) const {
    const double R = gas.R(), cv = gas.cv(), kap = gas.kappa();
    const double V = v.f(t, x), U = u.f(t, x), T = th.f(t, x);
    const double Vx = v.fx(t, x), Ux = u.fx(t, x), Tx = th.fx(t, x), Txx = th.fxx(t, x);
    const double P = R * T / V;
    const double Px = R * (Tx * V - T * Vx) / (V * V);
    const double Et = cv * th.ft(t, x) + U * u.ft(t, x);
    const double Ex = cv * Tx + U * Ux;
    const double heat = Txx / V - Tx * Vx / (V * V);
    return {v.ft(t, x) - s * Vx - Ux, u.ft(t, x) - s * Ux + Px,
            Et - s * Ex + (Px * U + P * Ux) - kap * heat};
  }
};

/// L2 error at t = 0.5 on [0, 10] with N cells.
inline double mms_error(int N) {
  const Manufactured m;
  const Grid g{10.0, N};
  SimConfig cfg;
  cfg.t_end = 0.5;
  auto s = make_state(m.gas, g, cfg, m.s, m.at(0, 0), m.at(0, g.L), [&](double x) { return m.at(0, x); });
  StepHooks hooks;
  hooks.left = [&](double t) { return m.at(t, 0.0); };
  hooks.right = [&](double t) { return m.at(t, g.L); };
  hooks.source = [&](double t, const Grid& grid, std::vector<Triple>& out) {
    for (int i = 1; i < grid.N; ++i) {
      const auto q = m.source(t, grid.xi(i));
      out[i].v += q.v;
      out[i].u += q.u;
      out[i].theta += q.theta;
    }
  };
  advance_to(s, cfg.t_end, hooks);
  double e = 0.0;
  for (int i = 0; i <= N; ++i) {
    const auto z = m.at(s.t, g.xi(i));
    const double d = (s.v[i] - z.v) * (s.v[i] - z.v) + (s.u[i] - z.u) * (s.u[i] - z.u) +
                     (s.theta[i] - z.theta) * (s.theta[i] - z.theta);
    e += (i == 0 || i == N ? 0.5 : 1.0) * d;
  }
  return std::sqrt(e * g.dxi());
}

}  // namespace inflow::testing
