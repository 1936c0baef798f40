#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "inflow/error.hpp"
#include "inflow/numerics.hpp"
#include "inflow/rarefaction.hpp"

using namespace inflow;

namespace {

const GasParams kGas(1.0, 1.4, 1.0, 1.0);
const LagState kPlus{1.0, 1.15, 1.0};

RareSetup wave(double delta = 0.2, double eps = 0.05) {
  return RareSetup::from_strength(kGas, kPlus, delta, eps, 20.0);
}

}  // namespace

TEST_CASE("lambda3, its inverse and the Riemann integral") {
  CHECK(lambda3(1.0, 0.0, kGas) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-15));
  CHECK(lambda3(0.8, 0.1, kGas) > lambda3(1.3, 0.1, kGas));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uv(0.2, 5.0), us(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double v = uv(rng), S = us(rng);
    const double lam = lambda3(v, S, kGas);
    CHECK(lambda3_inverse(lam, S, kGas) == doctest::Approx(v).epsilon(1e-12));
    // root-finding oracle
    const double vr = num::bisect([&](double x) { return lambda3(x, S, kGas) - lam; }, 1e-3, 100.0, 1e-15);
    CHECK(vr == doctest::Approx(v).epsilon(1e-12));
    CHECK(lam * lam == doctest::Approx(1.4 * isentrope_pressure(v, S, kGas) / v).epsilon(1e-13));
    const double vb = uv(rng);
    CHECK(riemann_integral(v, vb, S, kGas) ==
          doctest::Approx(riemann_integral_quadrature(v, vb, S, kGas)).epsilon(1e-11));
  }
}

TEST_CASE("rarefaction setup: curve membership and orientation") {
  const auto r = wave();
  CHECK(r.delta_r == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(r.z_minus.v > kPlus.v);
  CHECK(r.z_minus.u < kPlus.u);
  CHECK(r.z_minus.theta < kPlus.theta);
  CHECK(entropy(r.z_minus, kGas) == doctest::Approx(entropy(kPlus, kGas)).epsilon(1e-10));
  CHECK(r.Cq == doctest::Approx(1.0 / std::tgamma(21.0)).epsilon(1e-13));
  CHECK(r.w_minus == doctest::Approx(lambda3(r.z_minus.v, r.S, kGas)).epsilon(1e-15));
  try {
    RareSetup::from_left_volume(kGas, kPlus, 0.9, 0.05);
    FAIL("expected InvalidWaveOrdering");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidWaveOrdering);
  }
  const auto z = RareSetup::from_left_volume(kGas, kPlus, 1.0, 0.05);
  CHECK(z.delta_r == 0.0);
  CHECK(z.z_minus.u == kPlus.u);
  CHECK(z.z_minus.theta == kPlus.theta);
}

TEST_CASE("Burgers data and solution") {
  const auto r = wave();
  for (double x : {1.0, 100.0, 400.0, 900.0}) {
    const auto d = burgers_data(x, r);
    CHECK(d.dw == doctest::Approx(0.2 * boost::math::gamma_p(21.0, 0.05 * x)).epsilon(1e-12));
    const double h = 1e-3;
    CHECK(d.d1 == doctest::Approx((burgers_data(x + h, r).dw - burgers_data(x - h, r).dw) / (2 * h)).epsilon(1e-6));
    CHECK(d.d2 == doctest::Approx((burgers_data(x + h, r).d1 - burgers_data(x - h, r).d1) / (2 * h)).epsilon(1e-5));
  }
  CHECK(burgers_w(5.0, -100.0, r).w == r.w_minus);
  CHECK(burgers_w(5.0, 1e6, r).w == doctest::Approx(r.w_plus).epsilon(1e-15));
  // zero strength is constant
  const auto z = RareSetup::from_strength(kGas, kPlus, 0.0, 0.05);
  const auto b = burgers_w(3.0, 10.0, z);
  CHECK(b.w == z.w_minus);
  CHECK(b.w_x == 0.0);
  // inversion residual
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ut(1.0, 300.0), ux(-50.0, 1500.0);
  for (int i = 0; i < 2000; ++i) {
    const double T = ut(rng), x = ux(rng);
    const auto s = burgers_w(T, x, r);
    const double x0 = s.x0;
    CHECK(std::abs(x0 + s.w * T - x) <= 1e-11 * (1.0 + std::abs(x)));
  }
}

TEST_CASE("Burgers residual converges at second order") {
  const auto r = wave(0.3, 0.05);
  auto residual = [&](double h) {
    double m = 0.0;
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j < 100; ++j) {
        const double T = 2.0 + 0.5 * i, x = 20.0 + 8.0 * j;
        const double wt = (burgers_w(T + h, x, r).w - burgers_w(T - h, x, r).w) / (2 * h);
        const double wx = (burgers_w(T, x + h, r).w - burgers_w(T, x - h, r).w) / (2 * h);
        m = std::max(m, std::abs(wt + burgers_w(T, x, r).w * wx));
      }
    }
    return m;
  };
  const double e1 = residual(2.0), e2 = residual(1.0), e3 = residual(0.5);
  CHECK(std::log2(e1 / e2) >= 1.9);
  CHECK(std::log2(e2 / e3) >= 1.9);
}

TEST_CASE("smooth wave invariants at random points") {
  const auto r = wave();
  const double sm = -r.z_minus.u / r.z_minus.v;
  const double S = r.S;
  const double ir = kPlus.u + riemann_integral(1.0, kPlus.v, S, kGas);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ut(0.0, 300.0), ux(0.0, 1.0);
  int in_const = 0;
  for (int i = 0; i < 10000; ++i) {
    const double t = ut(rng);
    const auto sup = wave_support(t, r, sm);
    const double xi = ux(rng) * 1.2 * sup.xi_hi;
    const auto s = sample_smooth(t, xi, r, sm);
    CHECK(s.d1.u >= 0.0);
    if (s.in_constant_zone) {
      ++in_const;
      CHECK(s.state.v == r.z_minus.v);
      CHECK(s.state.u == r.z_minus.u);
      CHECK(s.state.theta == r.z_minus.theta);
      continue;
    }
    CHECK(entropy(s.state, kGas) == doctest::Approx(S).epsilon(1e-10));
    CHECK(std::abs(lambda3(s.state.v, S, kGas) - burgers_w(1.0 + t, xi + sm * t, r).w) <= 1e-10);
    CHECK(s.state.u + riemann_integral(1.0, s.state.v, S, kGas) == doctest::Approx(ir).epsilon(1e-11));
  }
  CHECK(in_const > 100);
}

TEST_CASE("smooth wave is monotone and connects z- to z+") {
  const auto r = wave();
  const double sm = -r.z_minus.u / r.z_minus.v;
  for (double t : {0.0, 10.0, 100.0}) {
    const auto sup = wave_support(t, r, sm);
    auto prev = sample_smooth(t, 0.0, r, sm).state;
    for (int i = 1; i <= 3000; ++i) {
      const auto s = sample_smooth(t, sup.xi_hi * i / 3000.0, r, sm).state;
      CHECK(s.v <= prev.v);
      CHECK(s.u >= prev.u);
      CHECK(s.theta >= prev.theta);
      prev = s;
    }
    const auto far = sample_smooth(t, sup.xi_hi * 1.5, r, sm).state;
    CHECK(far.v == doctest::Approx(kPlus.v).epsilon(1e-13));
    CHECK(far.u == doctest::Approx(kPlus.u).epsilon(1e-13));
    CHECK(far.theta == doctest::Approx(kPlus.theta).epsilon(1e-13));
  }
}

TEST_CASE("analytic derivatives agree with differences") {
  const auto r = wave();
  const double sm = -r.z_minus.u / r.z_minus.v;
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ut(0.0, 200.0), ux(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double t = ut(rng);
    const auto sup = wave_support(t, r, sm);
    const double xi = sup.xi_lo + 5.0 + ux(rng) * (0.5 * (sup.xi_hi - sup.xi_lo));
    const double h = 1e-2;
    const auto a = sample_smooth(t, xi - h, r, sm), b = sample_smooth(t, xi + h, r, sm);
    const auto m = sample_smooth(t, xi, r, sm);
    const double scale1 = std::abs(m.d1.u) + 1e-9;
    CHECK(std::abs(m.d1.v - (b.state.v - a.state.v) / (2 * h)) <= 1e-4 * scale1 + 1e-12);
    CHECK(std::abs(m.d1.u - (b.state.u - a.state.u) / (2 * h)) <= 1e-4 * scale1 + 1e-12);
    CHECK(std::abs(m.d1.theta - (b.state.theta - a.state.theta) / (2 * h)) <= 1e-4 * scale1 + 1e-12);
    const double scale2 = std::abs(m.d2.u) + std::abs(m.d1.u) * 1e-3 + 1e-12;
    CHECK(std::abs(m.d2.v - (b.d1.v - a.d1.v) / (2 * h)) <= 1e-3 * scale2);
    CHECK(std::abs(m.d2.theta - (b.d1.theta - a.d1.theta) / (2 * h)) <= 1e-3 * scale2);
    const double k = 1e-2;
    const auto p = sample_smooth(t + k, xi, r, sm), q = sample_smooth(t - k, xi, r, sm);
    CHECK(std::abs(m.dt.v - (p.state.v - q.state.v) / (2 * k)) <= 1e-4 * (std::abs(m.dt.v) + 1e-9));
    CHECK(std::abs(m.dt.u - (p.state.u - q.state.u) / (2 * k)) <= 1e-4 * (std::abs(m.dt.u) + 1e-9));
  }
}

TEST_CASE("derivative norm envelope") {
  const auto z = RareSetup::from_strength(kGas, kPlus, 0.0, 0.05);
  const auto rz = check_derivative_bounds(z, -1.0, 100.0, 0.0, 4, 100);
  for (const auto& n : rz.first) {
    CHECK(n.l1 == 0.0);
    CHECK(n.linf == 0.0);
  }
  const auto r = wave(0.3, 0.05);
  const double sm = -r.z_minus.u / r.z_minus.v;
  const auto rep = check_derivative_bounds(r, sm, 200.0, 0.0, 16, 4000);
  CHECK(rep.max_ratio <= 10.0);
  CHECK(rep.C1 > 0.0);
  // L1 norm of u_xi is the total variation w+ - w- carried to u
  for (const auto& n : rep.u_xi) CHECK(n.l1 == doctest::Approx(kPlus.u - r.z_minus.u).epsilon(1e-3));
}

TEST_CASE("L-infinity decay is (1+t)^-1 once the fan has spread") {
  // large-time window for the default smoothing: the crossover is near
  // 1/max w0' = sqrt(2 pi q) / (delta eps)
  const auto r = wave(0.3, 0.05);
  const double sm = -r.z_minus.u / r.z_minus.v;
  const auto rep = check_derivative_bounds(r, sm, 2e5, 2e4, 10, 4000);
  CHECK(rep.linf_exponent == doctest::Approx(-1.0).epsilon(0.05));
}
