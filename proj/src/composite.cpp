#include "inflow/composite.hpp"

#include <cmath>
#include <string>

#include "inflow/error.hpp"

namespace inflow {

LagState connect_zm(const LagState& z_plus, double v_m, const GasParams& g) {
  if (!(v_m >= z_plus.v)) {
    throw Error(ErrorKind::InvalidWaveOrdering,
                "intermediate state needs v_m >= v+ for u_m <= u+ (got v_m=" + std::to_string(v_m) + ")");
  }
  return rarefaction_curve(z_plus, v_m, g);
}

CompositeWave CompositeWave::build(const CompositeSpec& spec) {
  if (spec.v_m.has_value() == spec.delta_r.has_value()) {
    throw Error(ErrorKind::InvalidArgument, "composite wave needs exactly one of v_m and delta_r");
  }
  RareSetup rare = spec.v_m ? RareSetup::from_left_volume(spec.gas, spec.z_plus, *spec.v_m, spec.eps, spec.q)
                            : RareSetup::from_strength(spec.gas, spec.z_plus, *spec.delta_r, spec.eps, spec.q);
  const LagState& zm = rare.z_minus;
  if (!(zm.u > 0.0)) {
    throw Error(ErrorKind::InvalidWaveOrdering, "intermediate state must flow inward (u_m > 0)");
  }
  BlSetup bs{spec.gas, zm.to_euler(), spec.theta_minus};
  BlProfile bl = integrate_profile(bs, spec.grid);
  if (!(bl.boundary_state().u > 0.0)) {
    throw Error(ErrorKind::InvalidWaveOrdering, "boundary state must flow inward (u- > 0)");
  }
  return CompositeWave(std::move(bl), std::move(rare));
}

HatSample CompositeWave::hat_sample(double t, double xi) const {
  HatSample h;
  h.bl = bl_.at_lagrangian(xi);
  h.rare = sample_smooth(t, xi, rare_, s_minus());
  const auto& zm = z_m();
  const auto& a = h.bl.offset;
  const auto& b = h.rare.offset;
  h.state = {zm.v + a.v + b.v, zm.u + a.u + b.u, zm.theta + a.theta + b.theta};
  auto sum = [](const auto& x, const Triple& y) { return Triple{x.v + y.v, x.u + y.u, x.theta + y.theta}; };
  h.d1 = sum(h.bl.d1, h.rare.d1);
  h.d2 = sum(h.bl.d2, h.rare.d2);
  h.dt = h.rare.dt;
  return h;
}

SourceSample CompositeWave::sources(double t, double xi) const {
  const auto h = hat_sample(t, xi);
  const double R = gas().R();
  const double kappa = gas().kappa();
  const auto& a = h.bl.offset;
  const auto& b = h.rare.offset;
  const auto& zb = h.bl.state;
  const auto& zt = h.rare.state;
  const auto& B1 = h.bl.d1;
  const auto& B2 = h.bl.d2;
  const auto& T1 = h.rare.d1;
  const auto& T2 = h.rare.d2;
  const double vh = h.state.v, vb = zb.v, vt = zt.v;
  const double thb = zb.theta, tht = zt.theta;

  SourceSample s;
  s.G1 = R * (-B1.theta * b.v / (vh * vb) - T1.theta * a.v / (vh * vt) -
              B1.v * (b.theta * vb * vb - thb * b.v * (2.0 * vb + b.v)) / (vh * vh * vb * vb) -
              T1.v * (a.theta * vt * vt - tht * a.v * (2.0 * vt + a.v)) / (vh * vh * vt * vt));

  const double dp_bar = R * (b.theta * vb - thb * b.v) / (vh * vb);    // p^ - pbar
  const double dp_tilde = R * (a.theta * vt - tht * a.v) / (vh * vt);  // p^ - ptilde
  const double inv_diff = -b.v / (vh * vb);                              // 1/v^ - 1/vbar
  const double inv2_diff = -b.v * (vh + vb) / (vh * vh * vb * vb);       // 1/v^2 - 1/vbar^2
  const double flux = B2.theta * inv_diff + T2.theta / vh -
                      (B1.theta * B1.v * inv2_diff + (B1.theta * T1.v + T1.theta * B1.v + T1.theta * T1.v) / (vh * vh));
  s.G2 = dp_bar * B1.u + dp_tilde * T1.u - kappa * flux;
  return s;
}

SourceSample CompositeWave::sources_by_definition(double t, double xi) const {
  const double R = gas().R();
  const double kappa = gas().kappa();
  const double pm = R * z_m().theta / z_m().v;
  auto pressure_combo = [&](double x) {
    const auto h = hat_sample(t, x);
    return R * h.state.theta / h.state.v - R * h.bl.state.theta / h.bl.state.v -
           R * h.rare.state.theta / h.rare.state.v + pm;
  };
  auto heat_combo = [&](double x) {
    const auto h = hat_sample(t, x);
    return h.d1.theta / h.state.v - h.bl.d1.theta / h.bl.state.v;
  };
  const double hs = 1e-5 * (1.0 + xi);
  const double lo = std::max(0.0, xi - hs);
  const double hi = lo + 2.0 * hs;
  const auto h = hat_sample(t, 0.5 * (lo + hi));
  SourceSample s;
  s.G1 = (pressure_combo(hi) - pressure_combo(lo)) / (hi - lo);
  const double ph = R * h.state.theta / h.state.v;
  const double pb = R * h.bl.state.theta / h.bl.state.v;
  const double pt = R * h.rare.state.theta / h.rare.state.v;
  s.G2 = ph * h.d1.u - pb * h.bl.d1.u - pt * h.rare.d1.u - kappa * (heat_combo(hi) - heat_combo(lo)) / (hi - lo);
  return s;
}

}  // namespace inflow
