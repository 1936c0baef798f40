#pragma once

// Explicit finite-volume-style solver for the gas equations in the shifted
// Lagrangian coordinate xi = x - s- t on [0, L]:
//
//   v_t - s- v_xi - u_xi = 0
//   u_t - s- u_xi + p_xi = 0
//   E_t - s- E_xi + (p u)_xi = kappa (theta_xi / v)_xi,   E = Cv theta + u^2 / 2
//
// Nodes i = 0..N with Dirichlet data at both ends. Fluxes use MUSCL
// reconstruction with centered slopes and a local Lax-Friedrichs splitting;
// time stepping is SSP-RK3.

#include <functional>
#include <vector>

#include "inflow/composite.hpp"
#include "inflow/kernels.hpp"

namespace inflow {

struct Grid {
  double L = 0.0;
  int N = 0;

  double dxi() const noexcept { return L / N; }
  double xi(int i) const noexcept { return dxi() * i; }
  void validate() const;
};

struct SimConfig {
  double cfl = 0.4;
  double t_end = 200.0;
  double output_stride = 10.0;  ///< time between recorded diagnostics
  double decay_target = 0.1;
};

struct Perturbation {
  enum class Kind { None, Phi, Psi, Zeta, All };
  Kind kind = Kind::Psi;
  double amplitude = 1e-2;
  double width = 0.0;  ///< 0 means L/10
  double start = 0.0;  ///< bump occupies (start, start + width)
  /// Overrides `kind` when set: (phi0, psi0, zeta0) as a function of xi.
  std::function<Triple(double)> custom;

  Triple at(double xi, double L) const;
};

struct SimState {
  GasParams gas;
  Grid grid;
  SimConfig config;
  double s_minus = 0.0;
  LagState bc_left;
  LagState far_field;
  double t = 0.0;
  long steps = 0;
  std::vector<double> v, u, theta;
};

/// Optional extras for manufactured-solution runs.
struct StepHooks {
  std::function<LagState(double)> left;   ///< time-dependent Dirichlet data at xi = 0
  std::function<LagState(double)> right;  ///< ... and at xi = L
  /// Adds source terms (for the v, u and E equations) at every node.
  std::function<void(double t, const Grid&, std::vector<Triple>&)> source;
};

/// State built directly from node values; node 0 and node N are reset to the
/// boundary data.
SimState make_state(const GasParams& g, const Grid& grid, const SimConfig& cfg, double s_minus,
                    const LagState& left, const LagState& right, const std::function<LagState(double)>& init);

/// z^(0, xi_i) + perturbation(xi_i). Throws Error{CompatibilityViolated}
/// unless the perturbation vanishes at 0 and is supported inside (0, L/2),
/// and Error{PositivityViolated} if v or theta is not positive.
SimState init(const CompositeWave& wave, const Grid& grid, const Perturbation& pert, const SimConfig& cfg);

/// Default domain length: long enough for the boundary layer and the whole
/// smoothed fan at t_end.
double default_length(const CompositeWave& wave, double t_end);

/// Largest stable step: cfl * min(dxi / sigma_max, dxi^2 Cv min v / (2 kappa)),
/// sigma_max = max_i (|s-| + sqrt(gamma R theta_i) / v_i).
double stable_dt(const SimState& s);

/// d/dt of (v, u, E) at every node (zero at the Dirichlet nodes).
void rhs(const SimState& s, double t, const std::vector<double>& v, const std::vector<double>& u,
         const std::vector<double>& th, std::vector<Triple>& out, const StepHooks& hooks = {},
         kernels::FaceFluxFn flux = nullptr);

/// One SSP-RK3 step of size min(stable_dt, dt_max). On loss of positivity or
/// finiteness the step is retried with half the size, at most 10 times.
/// Returns the step taken.
double step(SimState& s, double dt_max = 0.0, const StepHooks& hooks = {});

/// Steps until s.t == t_target exactly.
void advance_to(SimState& s, double t_target, const StepHooks& hooks = {});

struct NormRecord {
  double t = 0.0;
  double l2 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double linf = 0.0;
  double energy = 0.0;
  double bnd_phi_xi = 0.0;
  double bnd_psi_xi = 0.0;
  double bnd_zeta_xi = 0.0;
  double n_norm = 0.0;  ///< H2 norm of the perturbation plus H1 norm of its time derivative
};

/// Reference wave sampled on the grid (the boundary layer part is cached).
class WaveOnGrid {
 public:
  WaveOnGrid(const CompositeWave& wave, const Grid& grid);
  struct Field {
    std::vector<double> v, u, theta;
    std::vector<double> v_t, u_t, theta_t;
  };
  Field at(double t) const;
  const CompositeWave& wave() const noexcept { return *wave_; }

 private:
  const CompositeWave* wave_;
  Grid grid_;
  std::vector<BlPoint> bl_;
};

/// Perturbation norms of s against the reference wave.
NormRecord diagnostics(const SimState& s, const WaveOnGrid& ref);

struct RunResult {
  std::vector<NormRecord> history;
  double sup_initial = 0.0;
  double sup_final = 0.0;
  double ratio = 0.0;
  bool decayed = false;  ///< sup_final <= decay_target * sup_initial
  double n_max = 0.0;    ///< running sup of n_norm (N(T))
};

/// Steps to config.t_end recording diagnostics at 0, every output_stride and
/// at t_end. `on_output` (optional) sees the state at every record.
RunResult run(SimState& s, const WaveOnGrid& ref,
              const std::function<void(const SimState&, const NormRecord&)>& on_output = {});

}  // namespace inflow
