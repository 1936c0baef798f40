#pragma once

#include <string_view>

namespace inflow {

/// Ideal polytropic gas: p = R rho theta, e = Cv theta, Cv = R / (gamma - 1),
/// plus the heat-conduction coefficient kappa. A is the entropy-pressure
/// constant in p = A rho^gamma exp((gamma - 1) s / R).
class GasParams {
 public:
  GasParams(double R, double gamma, double A, double kappa);

  double R() const noexcept { return R_; }
  double gamma() const noexcept { return gamma_; }
  double A() const noexcept { return A_; }
  double kappa() const noexcept { return kappa_; }
  double cv() const noexcept { return cv_; }

 private:
  double R_;
  double gamma_;
  double A_;
  double kappa_;
  double cv_;
};

struct LagState;

/// Eulerian point state (density, velocity, temperature).
struct EulerState {
  double rho = 1.0;
  double u = 0.0;
  double theta = 1.0;

  double pressure(const GasParams& g) const noexcept { return g.R() * rho * theta; }
  double internal_energy(const GasParams& g) const noexcept { return g.cv() * theta; }
  LagState to_lagrangian() const noexcept;
  void validate() const;
};

/// Lagrangian point state (specific volume, velocity, temperature).
struct LagState {
  double v = 1.0;
  double u = 0.0;
  double theta = 1.0;

  double pressure(const GasParams& g) const noexcept { return g.R() * theta / v; }
  EulerState to_euler() const noexcept { return {1.0 / v, u, theta}; }
  void validate() const;
};

inline LagState EulerState::to_lagrangian() const noexcept { return {1.0 / rho, u, theta}; }

struct SoundSpeeds {
  double c_s;      ///< sqrt(gamma R theta)
  double c_tilde;  ///< sqrt(R theta), speed of the isothermal hyperbolic part
};

SoundSpeeds sound_speeds(const EulerState& s, const GasParams& g);

/// M = |u| / c_s and M~ = |u| / c~.
double mach(const EulerState& s, const GasParams& g);
double tilde_mach(const EulerState& s, const GasParams& g);

/// The seven-way partition of phase space. The same tags are used for both
/// the c~-cut partition (Omega~) and the c_s-cut partition (Omega).
enum class RegimeTag { SubMinus, SubZero, SubPlus, TransPlus, TransMinus, SupPlus, SupMinus };

std::string_view to_string(RegimeTag tag);

struct Regime {
  RegimeTag tag;        ///< partition by |u| vs sqrt(R theta)
  RegimeTag omega_tag;  ///< partition by |u| vs sqrt(gamma R theta)
  double tilde_mach;
  double mach;
};

/// Ties |u| == c go to the Trans tags. A positive `eps` widens the tie to
/// |(|u| - c)| <= eps * c; eps == 0 is an exact floating-point comparison.
Regime classify(const EulerState& s, const GasParams& g, double eps = 0.0);

enum class BoundaryCase { Case1 = 1, Case2 = 2, Case3 = 3 };

/// Case 1: theta prescribed; Case 2: (u, theta); Case 3: (rho, u, theta).
/// Throws Error{TransitionalState} on the Trans tags.
BoundaryCase boundary_condition_case(const Regime& r);

/// s = Cv ln(R theta v^(gamma-1) / A).
double entropy(const LagState& s, const GasParams& g);

}  // namespace inflow
