#pragma once

// Small numerical toolbox shared by the wave constructions: regularized
// incomplete gamma, adaptive Gauss-Kronrod quadrature, a Dormand-Prince 5(4)
// integrator with step-to-target control, bracketing root search and an
// ordinary least-squares line fit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include "inflow/error.hpp"

namespace inflow::num {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// without cancellation for x > a + 1.
double gamma_q(double a, double x);

/// Adaptive 7/15-point Gauss-Kronrod on [a, b]; |error| <= max(abs_tol, rel_tol |I|).
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-13,
                 double rel_tol = 1e-13);

/// Bisection on a sign-changing bracket down to `abs_tol` (or until the
/// midpoint is no longer representable). Throws Error{NoBracket}.
double bisect(const std::function<double(double)>& f, double lo, double hi, double abs_tol);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Dormand-Prince 5(4) with per-step error control.
/// The error norm is max_i |err_i| / (abs_tol + rel_tol * max(|y_i|, |y_new_i|)).
template <std::size_t N>
class DormandPrince {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<State(double, const State&)>;

  DormandPrince(Rhs rhs, double rel_tol, double abs_tol) : rhs_(std::move(rhs)), rtol_(rel_tol) {
    atol_.fill(abs_tol);
  }
  DormandPrince(Rhs rhs, double rel_tol, const State& abs_tol)
      : rhs_(std::move(rhs)), rtol_(rel_tol), atol_(abs_tol) {}

  /// Advances (x, y) to x_end (x_end > x). `h` carries the step-size guess
  /// across calls. `on_step(x, y)` runs after every accepted step; returning
  /// false stops the integration early (x then holds the last accepted point).
  template <class Observer>
  void advance(double& x, State& y, double x_end, double& h, Observer&& on_step) {
    if (h <= 0.0) h = (x_end - x) / 16.0;
    while (x < x_end) {
      const double h_min = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
      bool last = false;
      double step = h;
      if (x + step >= x_end) {
        step = x_end - x;
        last = true;
      }
      State y_new;
      const double err = attempt(x, y, step, y_new);
      if (!std::isfinite(err)) {
        h = 0.25 * step;
        if (h < h_min) throw Error(ErrorKind::NonFinite, "Dormand-Prince produced a non-finite state");
        continue;
      }
      if (err <= 1.0) {
        x = last ? x_end : x + step;
        y = y_new;
        const double fac = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
        if (!last || fac < 1.0) h = step * std::max(0.2, fac);
        if (!on_step(x, y)) return;
      } else {
        h = step * std::max(0.2, 0.9 * std::pow(err, -0.2));
        if (h < h_min) throw Error(ErrorKind::StepUnderflow, "Dormand-Prince step size underflow");
      }
    }
  }

  void advance(double& x, State& y, double x_end, double& h) {
    advance(x, y, x_end, h, [](double, const State&) { return true; });
  }

 private:
  double attempt(double x, const State& y, double h, State& y_new) const {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    State tmp;
    const State k1 = rhs_(x, y);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    const State k2 = rhs_(x + c2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    const State k3 = rhs_(x + c3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    const State k4 = rhs_(x + c4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    const State k5 = rhs_(x + c5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const State k6 = rhs_(x + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    const State k7 = rhs_(x + h, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e =
          h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = atol_[i] + rtol_ * std::max(std::abs(y[i]), std::abs(y_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    return err;
  }

  Rhs rhs_;
  double rtol_;
  State atol_;
};

}  // namespace inflow::num
