#pragma once

// Superposition of the stationary boundary layer (far state z_m) and the
// smooth 3-rarefaction from z_m to z+:
//
//   z^(t, xi) = zbar(xi) + ztilde(t, xi) - z_m.
//
// The state is assembled from the two offsets a = zbar - z_m and
// b = ztilde - z_m, and the source terms use forms in which every term carries
// a factor of a or b (or of their derivatives), so each one vanishes exactly
// when the other wave is absent.

#include <optional>

#include "inflow/boundary_layer.hpp"
#include "inflow/rarefaction.hpp"

namespace inflow {

/// Point on the 3-rarefaction curve through z+ with specific volume v_m.
/// Throws Error{InvalidWaveOrdering} unless v_m >= v+ (which gives u_m <= u+).
LagState connect_zm(const LagState& z_plus, double v_m, const GasParams& g);

struct CompositeSpec {
  GasParams gas;
  LagState z_plus;
  std::optional<double> v_m;      ///< rarefaction by intermediate volume ...
  std::optional<double> delta_r;  ///< ... or by strength w+ - w_m
  double eps = 0.05;
  double q = 20.0;
  double theta_minus = 1.0;       ///< boundary temperature of the layer
  ProfileGrid grid;
};

struct HatSample {
  LagState state;
  Triple d1;
  Triple d2;
  Triple dt;
  BlPoint bl;
  SmoothWaveSample rare;
};

struct SourceSample {
  double G1 = 0.0;
  double G2 = 0.0;
};

class CompositeWave {
 public:
  static CompositeWave build(const CompositeSpec& spec);

  const GasParams& gas() const noexcept { return rare_.gas; }
  const BlProfile& bl() const noexcept { return bl_; }
  const RareSetup& rare() const noexcept { return rare_; }
  const LagState& z_m() const noexcept { return rare_.z_minus; }
  const LagState& z_plus() const noexcept { return rare_.z_plus; }
  LagState z_minus() const noexcept { return bl_.boundary_state(); }
  double s_minus() const noexcept { return bl_.s_minus(); }

  HatSample hat_sample(double t, double xi) const;
  SourceSample sources(double t, double xi) const;
  /// Same source terms from their definitions (pressure differences and
  /// fluxes differentiated by centered differences with h = 1e-5 (1 + xi)).
  SourceSample sources_by_definition(double t, double xi) const;

 private:
  CompositeWave(BlProfile bl, RareSetup rare) : bl_(std::move(bl)), rare_(std::move(rare)) {}
  BlProfile bl_;
  RareSetup rare_;
};

}  // namespace inflow
