#include "inflow/gas.hpp"

#include <cmath>
#include <string>

#include "inflow/error.hpp"

namespace inflow {

GasParams::GasParams(double R, double gamma, double A, double kappa)
    : R_(R), gamma_(gamma), A_(A), kappa_(kappa), cv_(R / (gamma - 1.0)) {
  if (!(R > 0.0) || !(gamma > 1.0) || !(A > 0.0) || !(kappa > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "gas requires R > 0, gamma > 1, A > 0, kappa > 0 (got R=" + std::to_string(R) +
                    ", gamma=" + std::to_string(gamma) + ", A=" + std::to_string(A) +
                    ", kappa=" + std::to_string(kappa) + ")");
  }
}

void EulerState::validate() const {
  if (!(rho > 0.0) || !(theta > 0.0) || !std::isfinite(u)) {
    throw Error(ErrorKind::InvalidArgument, "Euler state requires rho > 0, theta > 0");
  }
}

void LagState::validate() const {
  if (!(v > 0.0) || !(theta > 0.0) || !std::isfinite(u)) {
    throw Error(ErrorKind::InvalidArgument, "Lagrangian state requires v > 0, theta > 0");
  }
}

SoundSpeeds sound_speeds(const EulerState& s, const GasParams& g) {
  return {std::sqrt(g.gamma() * g.R() * s.theta), std::sqrt(g.R() * s.theta)};
}

double mach(const EulerState& s, const GasParams& g) {
  return std::abs(s.u) / sound_speeds(s, g).c_s;
}

double tilde_mach(const EulerState& s, const GasParams& g) {
  return std::abs(s.u) / sound_speeds(s, g).c_tilde;
}

std::string_view to_string(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::SubMinus: return "SubMinus";
    case RegimeTag::SubZero: return "SubZero";
    case RegimeTag::SubPlus: return "SubPlus";
    case RegimeTag::TransPlus: return "TransPlus";
    case RegimeTag::TransMinus: return "TransMinus";
    case RegimeTag::SupPlus: return "SupPlus";
    case RegimeTag::SupMinus: return "SupMinus";
  }
  return "?";
}

namespace {

RegimeTag partition(double u, double c, double eps) {
  if (u == 0.0) return RegimeTag::SubZero;
  const double a = std::abs(u);
  const bool tie = eps > 0.0 ? std::abs(a - c) <= eps * c : a == c;
  if (u > 0.0) {
    if (tie) return RegimeTag::TransPlus;
    return a < c ? RegimeTag::SubPlus : RegimeTag::SupPlus;
  }
  if (tie) return RegimeTag::TransMinus;
  return a < c ? RegimeTag::SubMinus : RegimeTag::SupMinus;
}

}  // namespace

Regime classify(const EulerState& s, const GasParams& g, double eps) {
  s.validate();
  const auto c = sound_speeds(s, g);
  return {partition(s.u, c.c_tilde, eps), partition(s.u, c.c_s, eps), std::abs(s.u) / c.c_tilde,
          std::abs(s.u) / c.c_s};
}

BoundaryCase boundary_condition_case(const Regime& r) {
  switch (r.tag) {
    case RegimeTag::SupMinus: return BoundaryCase::Case1;
    case RegimeTag::SubMinus:
    case RegimeTag::SubZero:
    case RegimeTag::SubPlus: return BoundaryCase::Case2;
    case RegimeTag::SupPlus: return BoundaryCase::Case3;
    case RegimeTag::TransPlus:
    case RegimeTag::TransMinus: break;
  }
  throw Error(ErrorKind::TransitionalState,
              "no boundary condition is assigned on the transitional set " +
                  std::string(to_string(r.tag)));
}

double entropy(const LagState& s, const GasParams& g) {
  return g.cv() * std::log(g.R() * s.theta * std::pow(s.v, g.gamma() - 1.0) / g.A());
}

}  // namespace inflow
