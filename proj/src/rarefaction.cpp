#include "inflow/rarefaction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "inflow/error.hpp"
#include "inflow/numerics.hpp"

namespace inflow {

double isentrope_pressure(double v, double S, const GasParams& g) {
  return g.A() * std::pow(v, -g.gamma()) * std::exp(S / g.cv());
}

namespace {

double speed_constant(double S, const GasParams& g) {
  return std::sqrt(g.gamma() * g.A() * std::exp(S / g.cv()));
}

}  // namespace

double lambda3(double v, double S, const GasParams& g) {
  return speed_constant(S, g) * std::pow(v, -0.5 * (g.gamma() + 1.0));
}

double lambda3_inverse(double lambda, double S, const GasParams& g) {
  const double K = speed_constant(S, g);
  return std::pow(K * K / (lambda * lambda), 1.0 / (g.gamma() + 1.0));
}

double riemann_integral(double va, double vb, double S, const GasParams& g) {
  const double e = 0.5 * (1.0 - g.gamma());
  return 2.0 * speed_constant(S, g) / (g.gamma() - 1.0) * (std::pow(va, e) - std::pow(vb, e));
}

double riemann_integral_quadrature(double va, double vb, double S, const GasParams& g, double tol) {
  return num::integrate([&](double v) { return lambda3(v, S, g); }, va, vb, tol, tol);
}

LagState rarefaction_curve(const LagState& z_plus, double v, const GasParams& g) {
  const double S = entropy(z_plus, g);
  LagState z;
  z.v = v;
  z.u = z_plus.u - riemann_integral(z_plus.v, v, S, g);
  // theta along the isentrope, relative to z+ so that v == v+ is exact
  z.theta = z_plus.theta * std::pow(v / z_plus.v, 1.0 - g.gamma());
  return z;
}

namespace {

RareSetup finish(const GasParams& g, const LagState& z_plus, double v_minus, double eps, double q) {
  z_plus.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "rarefaction requires 0 < eps < 1");
  if (!(q > 0.0)) throw Error(ErrorKind::InvalidArgument, "rarefaction requires q > 0");
  if (!(v_minus >= z_plus.v)) {
    throw Error(ErrorKind::InvalidWaveOrdering,
                "3-rarefaction into z+ needs v- >= v+ (got v-=" + std::to_string(v_minus) +
                    ", v+=" + std::to_string(z_plus.v) + ")");
  }
  RareSetup r{g, rarefaction_curve(z_plus, v_minus, g), z_plus};
  r.S = entropy(z_plus, g);
  r.K = speed_constant(r.S, g);
  r.w_plus = lambda3(z_plus.v, r.S, g);
  r.w_minus = lambda3(v_minus, r.S, g);
  r.delta_r = r.w_plus - r.w_minus;
  r.eps = eps;
  r.q = q;
  r.Cq = std::exp(-std::lgamma(q + 1.0));
  r.z_minus.validate();

  // curve membership, checked through an independent route
  const double ds = entropy(r.z_minus, g) - r.S;
  const double du = z_plus.u - riemann_integral_quadrature(z_plus.v, v_minus, r.S, g) - r.z_minus.u;
  if (std::abs(ds) > 1e-10 * std::max(1.0, std::abs(r.S)) || std::abs(du) > 1e-9 * std::max(1.0, std::abs(z_plus.u))) {
    throw Error(ErrorKind::InvalidArgument, "left state is not on the 3-rarefaction curve");
  }
  return r;
}

}  // namespace

RareSetup RareSetup::from_left_volume(const GasParams& g, const LagState& z_plus, double v_minus, double eps,
                                      double q) {
  return finish(g, z_plus, v_minus, eps, q);
}

RareSetup RareSetup::from_strength(const GasParams& g, const LagState& z_plus, double delta_r, double eps,
                                   double q) {
  const double S = entropy(z_plus, g);
  const double w_plus = lambda3(z_plus.v, S, g);
  if (!(delta_r >= 0.0) || !(delta_r < w_plus)) {
    throw Error(ErrorKind::InvalidArgument, "rarefaction strength must lie in [0, lambda3(z+))");
  }
  const double v_minus = delta_r == 0.0 ? z_plus.v : lambda3_inverse(w_plus - delta_r, S, g);
  return finish(g, z_plus, std::max(v_minus, z_plus.v), eps, q);
}

BurgersData burgers_data(double x, const RareSetup& r) {
  BurgersData d;
  if (x <= 0.0 || r.delta_r == 0.0) return d;
  const double y = r.eps * x;
  d.dw = r.delta_r * num::gamma_p(r.q + 1.0, y);
  const double base = std::exp(r.q * std::log(y) - y - std::lgamma(r.q + 1.0));
  d.d1 = r.delta_r * r.eps * base;
  d.d2 = r.delta_r * r.eps * r.eps * base * (r.q / y - 1.0);
  return d;
}

BurgersSample burgers_w(double T, double x, const RareSetup& r) {
  BurgersSample s;
  if (x <= r.w_minus * T || r.delta_r == 0.0) {
    s.w = r.w_minus;
    s.x0 = x - r.w_minus * T;
    s.constant = true;
    return s;
  }
  // F(x0) = x0 + w0(x0) T - x is strictly increasing; bracket by the extreme speeds.
  double lo = std::max(0.0, x - r.w_plus * T);
  double hi = x - r.w_minus * T;
  auto F = [&](double x0) { return x0 + (r.w_minus + burgers_data(x0, r).dw) * T - x; };
  double flo = F(lo);
  if (flo >= 0.0) {
    hi = lo;
  } else {
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = F(mid);
      if (fm == 0.0) {
        lo = hi = mid;
        break;
      }
      if (fm < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  // take the endpoint with the smaller residual
  const double x0 = std::abs(F(lo)) <= std::abs(F(hi)) ? lo : hi;
  const auto d = burgers_data(x0, r);
  const double J = 1.0 + d.d1 * T;
  s.x0 = x0;
  s.dw = d.dw;
  s.w = r.w_minus + d.dw;
  s.w_x = d.d1 / J;
  s.w_xx = d.d2 / (J * J * J);
  return s;
}

SmoothWaveSample sample_smooth(double t, double xi, const RareSetup& r, double s_minus) {
  SmoothWaveSample out;
  const double x = xi + s_minus * t;
  const auto b = burgers_w(1.0 + t, x, r);
  if (b.constant) {
    out.state = r.z_minus;
    out.in_constant_zone = true;
    return out;
  }
  const auto& g = r.gas;
  const double gm = g.gamma();
  const auto& zm = r.z_minus;
  const double wm = r.w_minus;

  // v / v- = (w / w-)^(-2/(gamma+1))
  const double lnr = -2.0 / (gm + 1.0) * std::log1p(b.dw / wm);
  out.offset.v = zm.v * std::expm1(lnr);
  out.offset.theta = zm.theta * std::expm1((1.0 - gm) * lnr);
  out.offset.u = 2.0 * wm * zm.v / (gm - 1.0) * std::expm1(0.5 * (1.0 - gm) * lnr);
  out.state = {zm.v + out.offset.v, zm.u + out.offset.u, zm.theta + out.offset.theta};

  const double v = out.state.v, th = out.state.theta, w = b.w;
  const double k = 2.0 / (gm + 1.0);
  const double dv = -k * v / w;              // dv/dw
  const double d2v = k * (k + 1.0) * v / (w * w);
  const double v1 = dv * b.w_x;
  const double v2 = d2v * b.w_x * b.w_x + dv * b.w_xx;
  out.d1 = {v1, -w * v1, (1.0 - gm) * th / v * v1};
  out.d2 = {v2, -(b.w_x * v1 + w * v2), (1.0 - gm) * th * (-gm * v1 * v1 / (v * v) + v2 / v)};

  // W(t, xi) = w(1 + t, xi + s- t) has W_t = (s- - w) w_x
  const double vt = dv * (s_minus - w) * b.w_x;
  out.dt = {vt, -w * vt, (1.0 - gm) * th / v * vt};
  return out;
}

WaveSupport wave_support(double t, const RareSetup& r, double s_minus) {
  const double T = 1.0 + t;
  // P(q+1, y) reaches 1 - 1e-16 by y ~ q + 10 sqrt(q+1) + 10
  const double x0_hi = (r.q + 10.0 * std::sqrt(r.q + 1.0) + 10.0) / r.eps;
  const double lo = r.w_minus * T - s_minus * t;
  const double hi = x0_hi + r.w_plus * T - s_minus * t;
  return {std::max(0.0, lo), std::max(0.0, hi)};
}

namespace {

struct Sampled {
  NormTriple first, ux, second, uxx;
};

Sampled norms_at(double t, const RareSetup& r, double s_minus, int n) {
  const auto sup = wave_support(t, r, s_minus);
  Sampled out;
  if (!(sup.xi_hi > sup.xi_lo)) return out;
  const double h = (sup.xi_hi - sup.xi_lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double xi = sup.xi_lo + h * i;
    const auto s = sample_smooth(t, xi, r, s_minus);
    const double f = std::sqrt(s.d1.v * s.d1.v + s.d1.u * s.d1.u + s.d1.theta * s.d1.theta);
    const double f2 = std::sqrt(s.d2.v * s.d2.v + s.d2.u * s.d2.u + s.d2.theta * s.d2.theta);
    const double wgt = (i == 0 || i == n) ? 0.5 * h : h;
    auto acc = [&](NormTriple& nt, double a) {
      nt.l1 += wgt * std::abs(a);
      nt.l2 += wgt * a * a;
      nt.linf = std::max(nt.linf, std::abs(a));
    };
    acc(out.first, f);
    acc(out.ux, s.d1.u);
    acc(out.second, f2);
    acc(out.uxx, s.d2.u);
  }
  for (auto* nt : {&out.first, &out.ux, &out.second, &out.uxx}) nt->l2 = std::sqrt(nt->l2);
  return out;
}

}  // namespace

BoundsReport check_derivative_bounds(const RareSetup& r, double s_minus, double horizon, double t0,
                                     int n_times, int n_xi) {
  if (!(horizon > t0) || n_times < 2 || n_xi < 10) {
    throw Error(ErrorKind::InvalidArgument, "bounds check needs horizon > t0, n_times >= 2, n_xi >= 10");
  }
  BoundsReport rep;
  std::vector<double> lt, lu, luxx;
  std::vector<double> r1, r2, rinf;
  const double d = r.delta_r, e = r.eps;
  for (int k = 0; k < n_times; ++k) {
    // geometric in 1 + t
    const double T = (1.0 + t0) * std::pow((1.0 + horizon) / (1.0 + t0), static_cast<double>(k) / (n_times - 1));
    const double t = T - 1.0;
    const auto s = norms_at(t, r, s_minus, n_xi);
    rep.times.push_back(t);
    rep.first.push_back(s.first);
    rep.u_xi.push_back(s.ux);
    rep.second.push_back(s.second);
    rep.u_xixi.push_back(s.uxx);
    if (d > 0.0) {
      const double env1 = d;
      const double env2 = std::min(d * std::sqrt(e), std::sqrt(d) / std::sqrt(T));
      const double envi = std::min(d * e, 1.0 / T);
      r1.push_back(s.first.l1 / env1);
      r2.push_back(s.first.l2 / env2);
      rinf.push_back(s.first.linf / envi);
      lt.push_back(std::log(T));
      lu.push_back(std::log(s.ux.linf));
      luxx.push_back(std::log(s.uxx.l1));
    }
  }
  if (d == 0.0) return rep;

  auto geo = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += std::log(x);
    return std::exp(m / v.size());
  };
  rep.C1 = geo(r1);
  rep.C2 = geo(r2);
  rep.Cinf = geo(rinf);
  for (std::size_t k = 0; k < r1.size(); ++k) {
    const double worst = std::max({r1[k] / rep.C1, r2[k] / rep.C2, rinf[k] / rep.Cinf});
    if (worst > rep.max_ratio) rep.max_ratio = worst;
    if (worst > 10.0) {
      throw Error(ErrorKind::EnvelopeViolated,
                  "derivative norms exceed 10x the fitted envelope at t=" + std::to_string(rep.times[k]));
    }
  }
  rep.linf_exponent = num::fit_line(lt, lu).slope;
  rep.second_l1_exponent = num::fit_line(lt, luxx).slope;
  return rep;
}

}  // namespace inflow
