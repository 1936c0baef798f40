#pragma once

// 3-rarefaction in the Lagrangian frame and its smooth approximation.
//
// Along the isentrope s = S the Lagrangian 3-speed is
//   lambda3(v) = sqrt(gamma p / v) = K v^(-(gamma+1)/2),  K^2 = gamma A exp((gamma-1) S / R),
// which is strictly decreasing, so the fan is described by w = lambda3(v)
// solving the inviscid Burgers equation. The smoothed wave takes Burgers data
// rising from w- to w+ like the regularized incomplete gamma P(q+1, eps x).

#include <vector>

#include "inflow/gas.hpp"

namespace inflow {

/// Isentrope pressure p(v, S) = A v^-gamma exp((gamma-1) S / R).
double isentrope_pressure(double v, double S, const GasParams& g);
double lambda3(double v, double S, const GasParams& g);
/// Closed-form inverse of lambda3 in v.
double lambda3_inverse(double lambda, double S, const GasParams& g);
/// int_{va}^{vb} lambda3(eta, S) d eta, closed form.
double riemann_integral(double va, double vb, double S, const GasParams& g);
/// Same integral by adaptive quadrature (used as an independent cross-check).
double riemann_integral_quadrature(double va, double vb, double S, const GasParams& g, double tol = 1e-11);

/// State on the 3-rarefaction curve through z+ at specific volume v.
LagState rarefaction_curve(const LagState& z_plus, double v, const GasParams& g);

struct RareSetup {
  GasParams gas;
  LagState z_minus;  ///< left state (the intermediate state of a composite wave)
  LagState z_plus;
  double S = 0.0;    ///< entropy of the isentrope
  double K = 0.0;    ///< lambda3 = K v^(-(gamma+1)/2)
  double w_minus = 0.0;
  double w_plus = 0.0;
  double delta_r = 0.0;
  double eps = 0.0;
  double q = 20.0;
  double Cq = 0.0;   ///< 1 / Gamma(q + 1)

  /// Left state from its specific volume v- >= v+ (v- == v+ gives the trivial wave).
  static RareSetup from_left_volume(const GasParams& g, const LagState& z_plus, double v_minus, double eps,
                                    double q = 20.0);
  /// Left state from the strength w+ - w- >= 0.
  static RareSetup from_strength(const GasParams& g, const LagState& z_plus, double delta_r, double eps,
                                 double q = 20.0);
};

struct BurgersSample {
  double w = 0.0;
  double w_x = 0.0;
  double w_xx = 0.0;
  double dw = 0.0;  ///< w - w-, without cancellation
  double x0 = 0.0;  ///< foot of the characteristic
  bool constant = false;
};

struct BurgersData {
  double dw = 0.0;  ///< w0(x) - w-
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Initial Burgers data and its first two derivatives.
BurgersData burgers_data(double x, const RareSetup& r);

/// Solution of w_t + w w_x = 0 at time T >= 0 by inverting the characteristic
/// map x = x0 + w0(x0) T with bisection in x0.
BurgersSample burgers_w(double T, double x, const RareSetup& r);

struct Triple {
  double v = 0.0;
  double u = 0.0;
  double theta = 0.0;
};

struct SmoothWaveSample {
  LagState state;
  Triple offset;  ///< state - z-, without cancellation
  Triple d1;      ///< xi-derivatives
  Triple d2;
  Triple dt;      ///< t-derivatives at fixed xi
  bool in_constant_zone = false;
};

/// Smooth rarefaction at (t, xi) in the shifted coordinate xi = x - s- t;
/// the Burgers solution is evaluated at time 1 + t.
SmoothWaveSample sample_smooth(double t, double xi, const RareSetup& r, double s_minus);

/// xi range outside which the smooth wave equals z- (left) or z+ up to ~1e-16 (right).
struct WaveSupport {
  double xi_lo;
  double xi_hi;
};
WaveSupport wave_support(double t, const RareSetup& r, double s_minus);

struct NormTriple {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

struct BoundsReport {
  std::vector<double> times;
  std::vector<NormTriple> first;   ///< norms of |(v, u, theta)_xi|
  std::vector<NormTriple> u_xi;    ///< norms of u_xi alone
  std::vector<NormTriple> second;  ///< norms of |(v, u, theta)_xixi|
  std::vector<NormTriple> u_xixi;
  double C1 = 0.0, C2 = 0.0, Cinf = 0.0;  ///< fitted envelope constants (geometric mean of ratios)
  double max_ratio = 0.0;                 ///< worst sample / fitted constant
  double linf_exponent = 0.0;             ///< log-log slope of ||u_xi||_inf over the fit window
  double second_l1_exponent = 0.0;        ///< log-log slope of ||u_xixi||_L1 over the fit window
};

/// Norms of the smooth-wave derivatives at `n_times` geometrically spaced
/// times in [t0, horizon], checked against the first-derivative envelope
/// min{delta eps^(1-1/p), delta^(1/p) (1+t)^(-1+1/p)} up to fitted constants.
/// Throws Error{EnvelopeViolated} if a sample exceeds 10x its fitted constant.
BoundsReport check_derivative_bounds(const RareSetup& r, double s_minus, double horizon, double t0 = 0.0,
                                     int n_times = 24, int n_xi = 6000);

}  // namespace inflow
