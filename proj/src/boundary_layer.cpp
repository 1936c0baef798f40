#include "inflow/boundary_layer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inflow/error.hpp"
#include "inflow/numerics.hpp"

namespace inflow {

std::string_view to_string(BlCase c) {
  switch (c) {
    case BlCase::NoSolution_SubTilde: return "NoSolution_SubTilde";
    case BlCase::Exists_NonDegenerate: return "Exists_NonDegenerate";
    case BlCase::Exists_Degenerate: return "Exists_Degenerate";
    case BlCase::NoSolution_Supersonic: return "NoSolution_Supersonic";
  }
  return "?";
}

std::string_view to_string(BlSubcase c) {
  switch (c) {
    case BlSubcase::I: return "I";
    case BlSubcase::II: return "II";
    case BlSubcase::None: return "None";
  }
  return "?";
}

std::string_view to_string(Monotone m) {
  switch (m) {
    case Monotone::Increasing: return "Increasing";
    case Monotone::Decreasing: return "Decreasing";
    case Monotone::Constant: return "Constant";
  }
  return "?";
}

namespace {

void validate(const BlSetup& s) {
  s.far.validate();
  if (!(s.far.u > 0.0)) throw Error(ErrorKind::InvalidArgument, "boundary layer requires u+ > 0");
  if (!(s.theta_minus > 0.0)) throw Error(ErrorKind::InvalidArgument, "boundary layer requires theta- > 0");
}

// Far-field constants shared by every evaluation along the profile.
struct Coeffs {
  double Rt;     // R theta+
  double u2;     // u+^2
  double a;      // R theta+ + u+^2
  double b;      // 4 R theta+ u+^2
  double G1;     // G2(1) = |u+^2 - R theta+|
  double D1;     // denominator at w2 = 1, 2 (u+^2 - R theta+)
  double L1;     // L(1)
  double pref;   // R rho+ u+
  double sigma;  // branch sign
  double gamma;
};

Coeffs coeffs(const BlSetup& s) {
  const auto& g = s.gas;
  Coeffs c{};
  c.Rt = g.R() * s.far.theta;
  c.u2 = s.far.u * s.far.u;
  c.a = c.Rt + c.u2;
  c.b = 4.0 * c.Rt * c.u2;
  c.sigma = c.u2 > c.Rt ? 1.0 : -1.0;
  c.G1 = std::abs(c.u2 - c.Rt);
  c.D1 = 2.0 * (c.u2 - c.Rt);
  c.pref = g.R() * s.far.rho * s.far.u;
  c.gamma = g.gamma();
  c.L1 = c.pref * (g.gamma() * c.Rt - c.u2) / ((c.u2 - c.Rt) * (g.gamma() - 1.0));
  return c;
}

double radicand(const Coeffs& c, double y) {
  // a^2 - b (1 + y) with a^2 - b = (u^2 - R theta)^2 folded in exactly
  return c.G1 * c.G1 - c.b * y;
}

struct Local {
  double G, D, L;
};

// L at w2 = 1 + y, written as L(1) plus an increment proportional to y so
// that neither the fixed point nor the degenerate zero of L(1) loses digits.
Local local(const Coeffs& c, double y, bool clamp) {
  double r = radicand(c, y);
  if (r < 0.0) {
    if (!clamp) throw Error(ErrorKind::OutOfDomain, "w2 exceeds w2_sup");
    r = 0.0;
  }
  Local l{};
  l.G = std::sqrt(r);
  l.D = (c.u2 - c.Rt) + c.sigma * l.G;
  l.L = c.L1 + c.pref * c.sigma * c.a * c.b * y / ((l.G + c.G1) * l.D * c.D1);
  return l;
}

double w1_minus_one(const Coeffs& c, double G, double y) {
  return -2.0 * c.sigma * c.Rt * y / (G + c.G1);
}

}  // namespace

double w2_sup(const BlSetup& s) {
  const double Rt = s.gas.R() * s.far.theta;
  const double u2 = s.far.u * s.far.u;
  return (Rt + u2) * (Rt + u2) / (4.0 * Rt * u2);
}

int branch_sign(const BlSetup& s) {
  return s.far.u * s.far.u > s.gas.R() * s.far.theta ? 1 : -1;
}

HL h_and_l(double w2, const BlSetup& s) {
  const auto c = coeffs(s);
  const double y = w2 - 1.0;
  const auto l = local(c, y, false);
  return {-l.L * y, l.L, l.G};
}

HDerivatives h_derivatives(double w2, const BlSetup& s) {
  const auto c = coeffs(s);
  const double y = w2 - 1.0;
  const auto l = local(c, y, false);
  const double dG = -0.5 * c.b / l.G;
  const double d2G = -c.b * c.b / (4.0 * l.G * l.G * l.G);
  const double k = 0.5 * c.pref * (-2.0 * c.a * c.sigma);
  HDerivatives d{};
  d.L = l.L;
  d.dL = k * dG / (l.D * l.D);
  d.d2L = k * (d2G / (l.D * l.D) - 2.0 * c.sigma * dG * dG / (l.D * l.D * l.D));
  d.H = -l.L * y;
  d.dH = -d.dL * y - l.L;
  d.d2H = -d.d2L * y - 2.0 * d.dL;
  return d;
}

W1 w1_of(double w2, const BlSetup& s) {
  const auto c = coeffs(s);
  const double y = w2 - 1.0;
  const auto l = local(c, y, false);
  W1 w{};
  w.minus_one = w1_minus_one(c, l.G, y);
  w.value = 1.0 + w.minus_one;
  w.d1 = -c.sigma * c.Rt / l.G;
  w.d2 = -2.0 * c.sigma * c.Rt * c.Rt * c.u2 / (l.G * l.G * l.G);
  return w;
}

double exponential_rate(const BlSetup& s) { return coeffs(s).L1 / s.gas.kappa(); }

double algebraic_rate(const BlSetup& s) {
  return -h_derivatives(1.0, s).d2H / (2.0 * s.gas.kappa());
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kMachTieTol * std::abs(b); }

}  // namespace

std::optional<double> find_w2_star(const BlSetup& s) {
  validate(s);
  const double g = s.gas.gamma();
  const double u2 = s.far.u * s.far.u;
  const double edge = 0.5 * (g - 1.0) * s.gas.R() * s.far.theta;
  if (near(u2, edge)) return 0.0;
  if (u2 < edge) return std::nullopt;
  const auto c = coeffs(s);
  constexpr double tol = 1e-12;
  return num::bisect([&](double w) { return local(c, w - 1.0, false).L; }, tol, 1.0 - tol, tol);
}

BlExistence analyze_existence(const BlSetup& s) {
  validate(s);
  BlExistence e;
  e.w2_sup = w2_sup(s);
  const double w0 = s.w2_0();
  e.monotone = w0 < 1.0 ? Monotone::Increasing : (w0 > 1.0 ? Monotone::Decreasing : Monotone::Constant);

  const auto c = sound_speeds(s.far, s.gas);
  const double u = s.far.u;
  if (u < c.c_tilde || near(u, c.c_tilde)) {
    e.kase = BlCase::NoSolution_SubTilde;
  } else if (near(u, c.c_s)) {
    e.kase = BlCase::Exists_Degenerate;
  } else if (u < c.c_s) {
    e.kase = BlCase::Exists_NonDegenerate;
  } else {
    e.kase = BlCase::NoSolution_Supersonic;
  }

  switch (e.kase) {
    case BlCase::Exists_NonDegenerate: {
      e.w2_star = find_w2_star(s);
      const double g = s.gas.gamma();
      const double edge = 0.5 * (g - 1.0) * s.gas.R() * s.far.theta;
      e.subcase = (g <= 3.0 || (u * u > edge && !near(u * u, edge))) ? BlSubcase::I : BlSubcase::II;
      e.window_lo = e.w2_star.value_or(0.0);
      e.window_hi = e.w2_sup;
      const double lo = e.w2_star ? e.window_lo + kWindowMargin : 0.0;
      e.exists = true;
      e.admissible = (w0 > lo && w0 <= e.window_hi) || w0 == 1.0;
      break;
    }
    case BlCase::Exists_Degenerate:
      e.window_lo = 1.0;
      e.window_hi = e.w2_sup;
      e.exists = true;
      e.admissible = (w0 > 1.0 && w0 <= e.window_hi) || w0 == 1.0;
      break;
    default:
      break;
  }
  return e;
}

BlExistence classify_existence(const BlSetup& s) {
  auto e = analyze_existence(s);
  if (e.exists && !e.admissible) {
    throw Error(ErrorKind::InadmissibleBoundaryValue,
                "w2(0)=" + std::to_string(s.w2_0()) + " outside the admissible window (" +
                    std::to_string(e.window_lo) + ", " + std::to_string(e.window_hi) + "] for " +
                    std::string(to_string(e.kase)));
  }
  return e;
}

BlProfile integrate_profile(const BlSetup& s, const ProfileGrid& grid) {
  const auto ex = grid.enforce_window ? classify_existence(s) : analyze_existence(s);
  if (!ex.exists && s.w2_0() != 1.0) {
    throw Error(ErrorKind::InvalidArgument,
                "no boundary layer exists for this far field (" + std::string(to_string(ex.kase)) + ")");
  }

  BlProfile p(s);
  p.existence_ = ex;
  p.delta_bar_ = std::abs(s.far.theta - s.theta_minus);
  const bool degenerate = ex.kase == BlCase::Exists_Degenerate;
  p.decay_kind_ = degenerate ? DecayKind::Algebraic : DecayKind::Exponential;
  p.decay_constant_ = degenerate ? algebraic_rate(s) : exponential_rate(s);

  const auto c = coeffs(s);
  const double kappa = s.gas.kappa();
  const double y0 = s.w2_0() - 1.0;

  // Far from 1 the approach can be much slower than the linear rate suggests,
  // so the default window also covers the e-folding transit from w2(0).
  double transit = 0.0;
  if (!degenerate && y0 != 0.0 && local(c, y0, true).L > 0.0) {
    transit = num::integrate(
        [&](double t) {
          const double L = local(c, t * y0, true).L;
          return L > 0.0 ? kappa / (L * t) : 0.0;
        },
        std::exp(-1.0), 1.0, 1e-8, 1e-8);
  }
  double x_max = grid.x_max;
  if (x_max <= 0.0) {
    const double y_ref = y0 == 0.0 ? 1.0 : std::abs(y0);
    x_max = degenerate ? 1e4 / (p.decay_constant_ * y_ref) : transit + 50.0 / p.decay_constant_;
  }
  double dx = grid.dx;
  if (dx <= 0.0) dx = degenerate ? x_max / 20000.0 : 1.0 / (80.0 * p.decay_constant_);
  if (!(dx > 0.0) || !(x_max > dx)) throw Error(ErrorKind::InvalidArgument, "profile grid needs 0 < dx < x_max");

  const double rho_p = s.far.rho;
  const double u_p = s.far.u;
  const double th_p = s.far.theta;
  const double R = s.gas.R();
  const double mom_ref = rho_p * u_p * u_p + R * rho_p * th_p;

  auto record = [&](double x, double xi, double y) {
    const auto l = local(c, y, true);
    const double m1 = w1_minus_one(c, l.G, y);
    const double w1 = 1.0 + m1;
    LagState st{w1 / rho_p, u_p * w1, th_p * (1.0 + y)};
    const double rho = 1.0 / st.v;
    p.x_.push_back(x);
    p.xi_.push_back(xi);
    p.y_.push_back(y);
    p.w2_.push_back(1.0 + y);
    p.states_.push_back(st);
    p.res_mass_.push_back((rho * st.u - rho_p * u_p) / (rho_p * u_p));
    p.res_mom_.push_back((rho * st.u * st.u + R * rho * st.theta - mom_ref) / mom_ref);
  };

  using DP = num::DormandPrince<2>;
  // Independent variable is the Eulerian x; the second component carries the
  // Lagrangian mass coordinate xi with d xi / dx = rho.
  DP dp(
      [&](double, const DP::State& z) {
        const auto l = local(c, z[0], true);
        const double w1 = 1.0 + w1_minus_one(c, l.G, z[0]);
        return DP::State{-l.L * z[0] / kappa, rho_p / w1};
      },
      1e-10, DP::State{1e-10 * 1e-12, 1e-12});

  double x = 0.0;
  DP::State z{y0, 0.0};
  record(0.0, 0.0, y0);
  if (y0 == 0.0) {
    // Trivial profile: two constant samples are enough for downstream consumers.
    record(dx, rho_p * dx, 0.0);
    p.s_minus_ = -p.states_.front().u / p.states_.front().v;
    return p;
  }

  double h = 0.0;
  const double sgn = y0 > 0.0 ? 1.0 : -1.0;
  double prev_abs = std::abs(y0);
  const auto n_out = static_cast<std::size_t>(std::floor(x_max / dx + 0.5));
  for (std::size_t k = 1; k <= n_out; ++k) {
    const double x_target = dx * static_cast<double>(k);
    if (degenerate && std::abs(z[0]) < 1e-8) {
      // Quadratic tangency: 1/y is affine with slope c~0 (|y| < 1e-8).
      const double y_new = 1.0 / (1.0 / z[0] + p.decay_constant_ * (x_target - x));
      const double w1a = 1.0 + w1_minus_one(c, local(c, z[0], true).G, z[0]);
      const double w1b = 1.0 + w1_minus_one(c, local(c, y_new, true).G, y_new);
      z[1] += 0.5 * (rho_p / w1a + rho_p / w1b) * (x_target - x);
      z[0] = y_new;
      x = x_target;
    } else {
      bool bad = false;
      dp.advance(x, z, x_target, h, [&](double, const DP::State& zz) {
        const double a = std::abs(zz[0]);
        if (zz[0] * sgn < 0.0 || a > prev_abs * (1.0 + 1e-9)) {
          bad = true;
          return false;
        }
        prev_abs = a;
        return true;
      });
      if (bad) {
        throw Error(ErrorKind::Divergence,
                    "|w2 - 1| grew or changed sign at x=" + std::to_string(x) + " (inadmissible w2(0)?)");
      }
    }
    record(x, z[1], z[0]);
    if (std::abs(z[0]) < 1e-12) break;
  }
  if (std::abs(z[0]) > 0.5 * std::abs(y0)) {
    throw Error(ErrorKind::Divergence, "profile did not approach the far state within x_max");
  }
  p.s_minus_ = -p.states_.front().u / p.states_.front().v;
  return p;
}

BlPoint BlProfile::point_from_w2_offset(double y) const {
  const auto c = coeffs(setup_);
  const double kappa = setup_.gas.kappa();
  const auto l = local(c, y, true);
  const double v_p = 1.0 / setup_.far.rho;
  const double u_p = setup_.far.u;
  const double th_p = setup_.far.theta;

  const double m1 = w1_minus_one(c, l.G, y);
  const double w1 = 1.0 + m1;
  const double w1_w = -c.sigma * c.Rt / l.G;
  const double w1_ww = -2.0 * c.sigma * c.Rt * c.Rt * c.u2 / (l.G * l.G * l.G);

  const double H = -l.L * y;
  const double dG = -0.5 * c.b / l.G;
  const double dL = 0.5 * c.pref * (-2.0 * c.a * c.sigma) * dG / (l.D * l.D);
  const double H_w = -dL * y - l.L;

  const double vb = v_p * w1;
  const double vb_w = v_p * w1_w;
  const double y1 = H * vb / kappa;
  const double y2 = (H_w * vb + H * vb_w) * y1 / kappa;

  BlPoint pt;
  pt.state = {vb, u_p * w1, th_p * (1.0 + y)};
  pt.offset = {v_p * m1, u_p * m1, th_p * y};
  pt.d1 = {vb_w * y1, u_p * w1_w * y1, th_p * y1};
  pt.d2 = {v_p * (w1_ww * y1 * y1 + w1_w * y2), u_p * (w1_ww * y1 * y1 + w1_w * y2), th_p * y2};
  return pt;
}

BlPoint BlProfile::at_lagrangian(double xi) const {
  if (!(xi >= 0.0)) throw Error(ErrorKind::InvalidArgument, "boundary layer evaluated at xi < 0");
  if (y_.front() == 0.0) return point_from_w2_offset(0.0);

  const auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
  const std::size_t k = static_cast<std::size_t>(it - xi_.begin()) - 1;
  double y = y_[k];
  const double d = xi - xi_[k];
  if (d == 0.0) return point_from_w2_offset(y);

  const double v_p = 1.0 / setup_.far.rho;
  if (k + 1 == xi_.size()) {
    // Beyond the stored tail the linearized (or quadratic) decay is exact to O(y).
    if (decay_kind_ == DecayKind::Exponential) {
      y *= std::exp(-decay_constant_ * v_p * d);
    } else {
      const double sgn = y > 0.0 ? 1.0 : -1.0;
      y = sgn / (1.0 / std::abs(y) + decay_constant_ * v_p * d);
    }
    return point_from_w2_offset(y);
  }

  const auto c = coeffs(setup_);
  const double kappa = setup_.gas.kappa();
  using DP = num::DormandPrince<1>;
  DP dp(
      [&](double, const DP::State& z) {
        const auto l = local(c, z[0], true);
        const double w1 = 1.0 + w1_minus_one(c, l.G, z[0]);
        return DP::State{-l.L * z[0] * v_p * w1 / kappa};
      },
      1e-12, 1e-12 * 1e-12);
  double s = xi_[k];
  DP::State z{y};
  double h = d;
  dp.advance(s, z, xi, h);
  return point_from_w2_offset(z[0]);
}

DecayReport verify_decay(const BlProfile& p) {
  const auto x = p.x();
  const auto w2 = p.w2();
  std::size_t tail = 0;
  for (double w : w2) tail += std::abs(w - 1.0) > 1e-10 ? 1 : 0;
  if (tail < 50) {
    throw Error(ErrorKind::InsufficientTail,
                "only " + std::to_string(tail) + " samples with |w2 - 1| > 1e-10");
  }

  const double y0 = std::abs(w2.front() - 1.0);
  std::vector<double> xs, logs, recips;
  for (std::size_t i = 0; i < w2.size(); ++i) {
    const double a = std::abs(w2[i] - 1.0);
    if (a > 1e-10 && a <= 0.1 * y0) {
      xs.push_back(x[i]);
      logs.push_back(std::log(a));
      recips.push_back(1.0 / a);
    }
  }
  if (xs.size() < 50) {
    throw Error(ErrorKind::InsufficientTail, "only " + std::to_string(xs.size()) + " samples in the decay tail");
  }

  DecayReport r;
  r.kind = p.decay_kind();
  r.expected_rate = p.decay_constant();
  r.tail_samples = xs.size();
  const auto lf = num::fit_line(xs, logs);
  const auto rf = num::fit_line(xs, recips);
  r.r2_log = lf.r2;
  r.r2_reciprocal = rf.r2;
  r.fitted_rate = r.kind == DecayKind::Exponential ? -lf.slope : rf.slope;
  r.relative_error = std::abs(r.fitted_rate - r.expected_rate) / r.expected_rate;
  r.rate_ok = r.relative_error <= (r.kind == DecayKind::Exponential ? 0.05 : 0.10);
  return r;
}

}  // namespace inflow
