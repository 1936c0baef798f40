#pragma once

// Stationary boundary layer of the heat-conductive, non-viscous gas on the
// half line. With w1 = u/u+ = rho+/rho and w2 = theta/theta+ the profile
// reduces to the scalar problem
//
//   kappa w2' = H(w2) = L(w2) (1 - w2),   w2(0) = theta-/theta+,  w2(inf) = 1,
//
// and w1 follows algebraically from w2 on the branch fixed by u+ vs sqrt(R theta+).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "inflow/gas.hpp"

namespace inflow {

struct BlSetup {
  GasParams gas;
  EulerState far;  ///< far-field state z+, u+ > 0
  double theta_minus;

  double w2_0() const noexcept { return theta_minus / far.theta; }
};

enum class BlCase { NoSolution_SubTilde, Exists_NonDegenerate, Exists_Degenerate, NoSolution_Supersonic };
enum class BlSubcase { I, II, None };
enum class Monotone { Increasing, Decreasing, Constant };

std::string_view to_string(BlCase c);
std::string_view to_string(BlSubcase c);
std::string_view to_string(Monotone m);

struct BlExistence {
  BlCase kase = BlCase::NoSolution_SubTilde;
  BlSubcase subcase = BlSubcase::None;
  std::optional<double> w2_star;
  double w2_sup = 1.0;
  Monotone monotone = Monotone::Constant;
  /// Admissible boundary values are w2_0 in (window_lo, window_hi]; the
  /// trivial value w2_0 == 1 is always admitted when a solution exists.
  double window_lo = 0.0;
  double window_hi = 0.0;
  bool exists = false;
  bool admissible = false;
};

/// Mach-number tie tolerance for the existence classification (relative).
inline constexpr double kMachTieTol = 1e-12;
/// Margin above w2* demanded of an admissible boundary value.
inline constexpr double kWindowMargin = 1e-10;

double w2_sup(const BlSetup& s);

/// +1 when u+ > sqrt(R theta+), -1 when u+ < sqrt(R theta+).
int branch_sign(const BlSetup& s);

struct HL {
  double H;
  double L;
  double G2;
};

/// Throws Error{OutOfDomain} when w2 > w2_sup.
HL h_and_l(double w2, const BlSetup& s);

struct HDerivatives {
  double L, dL, d2L;
  double H, dH, d2H;
};

HDerivatives h_derivatives(double w2, const BlSetup& s);

/// w1 on the branch selected by the far field, and its w2-derivatives.
struct W1 {
  double value;
  double minus_one;  ///< w1 - 1 without cancellation
  double d1;
  double d2;
};

W1 w1_of(double w2, const BlSetup& s);

/// Exponential rate c0 = L(1)/kappa.
double exponential_rate(const BlSetup& s);
/// Algebraic rate c~0 = -H''(1)/(2 kappa).
double algebraic_rate(const BlSetup& s);

std::optional<double> find_w2_star(const BlSetup& s);

/// Full four-case classification; never throws for valid u+ > 0.
BlExistence analyze_existence(const BlSetup& s);

/// As analyze_existence, but throws Error{InadmissibleBoundaryValue} when a
/// solution exists for the far field but w2_0 lies outside its window.
BlExistence classify_existence(const BlSetup& s);

enum class DecayKind { Exponential, Algebraic };

struct ProfileGrid {
  double dx = 0.0;     ///< output spacing in the Eulerian coordinate; 0 picks a default
  double x_max = 0.0;  ///< 0 picks 50/c0 (exponential) or 1e4/(c~0 |w2_0 - 1|) (algebraic)
  /// false skips the admissibility test and lets the integration itself
  /// decide (used to cross-check the window against the dynamics).
  bool enforce_window = true;
};

struct StateDerivative {
  double v = 0.0;
  double u = 0.0;
  double theta = 0.0;
};

/// Boundary-layer value at a Lagrangian coordinate, with the offset from the
/// far state computed without cancellation and xi-derivatives up to order two.
struct BlPoint {
  LagState state;
  StateDerivative offset;
  StateDerivative d1;
  StateDerivative d2;
};

class BlProfile {
 public:
  const BlSetup& setup() const noexcept { return setup_; }
  const BlExistence& existence() const noexcept { return existence_; }

  /// Eulerian sample points (uniform) and the matching Lagrangian mass coordinate.
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> xi() const noexcept { return xi_; }
  std::span<const double> w2() const noexcept { return w2_; }
  std::span<const LagState> states() const noexcept { return states_; }
  std::span<const double> residual_mass() const noexcept { return res_mass_; }
  std::span<const double> residual_momentum() const noexcept { return res_mom_; }

  double delta_bar() const noexcept { return delta_bar_; }
  DecayKind decay_kind() const noexcept { return decay_kind_; }
  /// c0 for exponential decay, c~0 for algebraic decay.
  double decay_constant() const noexcept { return decay_constant_; }
  /// Boundary speed s- = -u-/v- (equal to -rho+ u+ along the whole profile).
  double s_minus() const noexcept { return s_minus_; }
  LagState boundary_state() const noexcept { return states_.front(); }
  LagState far_state() const noexcept { return setup_.far.to_lagrangian(); }

  /// Evaluates the profile at Lagrangian coordinate xi >= 0 by integrating
  /// from the nearest stored sample.
  BlPoint at_lagrangian(double xi) const;

 private:
  friend BlProfile integrate_profile(const BlSetup&, const ProfileGrid&);
  explicit BlProfile(BlSetup s) : setup_(std::move(s)) {}

  BlPoint point_from_w2_offset(double y) const;

  BlSetup setup_;
  BlExistence existence_;
  std::vector<double> x_, xi_, w2_, y_;
  std::vector<LagState> states_;
  std::vector<double> res_mass_, res_mom_;
  double delta_bar_ = 0.0;
  DecayKind decay_kind_ = DecayKind::Exponential;
  double decay_constant_ = 0.0;
  double s_minus_ = 0.0;
};

/// Integrates kappa w2' = H(w2) with adaptive Dormand-Prince steps (relative
/// tolerance 1e-10 on w2 - 1) and reconstructs (v, u, theta) along the profile.
BlProfile integrate_profile(const BlSetup& s, const ProfileGrid& grid = {});

struct DecayReport {
  DecayKind kind = DecayKind::Exponential;
  double expected_rate = 0.0;  ///< c0 or c~0
  double fitted_rate = 0.0;    ///< -slope of log|w2-1| or slope of 1/|w2-1|
  double relative_error = 0.0;
  double r2_log = 0.0;         ///< R^2 of the straight-line fit to log|w2-1|
  double r2_reciprocal = 0.0;  ///< R^2 of the straight-line fit to 1/|w2-1|
  std::size_t tail_samples = 0;
  bool rate_ok = false;        ///< within 5% (exponential) or 10% (algebraic)
};

/// Throws Error{InsufficientTail} when fewer than 50 samples have |w2-1| > 1e-10.
DecayReport verify_decay(const BlProfile& p);

}  // namespace inflow
