#pragma once

// Face-flux kernels for the shifted Lagrangian system. A face kernel turns
// node values and (precomputed) reconstruction slopes into the numerical flux
// at faces i+1/2, i = 0..n_faces-1: local Lax-Friedrichs on the convective
// part, with the centered heat flux folded into the energy component.
//
// The AVX2 variant performs the same IEEE operations in the same order as the
// scalar one, so both produce identical bits (the build disables FMA
// contraction).

#include <cstddef>
#include <string_view>

namespace inflow::kernels {

struct FaceParams {
  double s_minus;
  double R;
  double gamma;
  double cv;
  double kappa;
  double inv_dxi;
};

struct FaceInputs {
  const double* v;
  const double* u;
  const double* theta;
  const double* dv;  ///< slopes (already multiplied by dxi, i.e. node differences)
  const double* du;
  const double* dtheta;
};

struct FaceOutputs {
  double* f_v;
  double* f_u;
  double* f_e;
};

using FaceFluxFn = void (*)(const FaceParams&, const FaceInputs&, const FaceOutputs&, std::size_t n_faces);

void face_flux_scalar(const FaceParams& p, const FaceInputs& in, const FaceOutputs& out, std::size_t n_faces);
void face_flux_avx2(const FaceParams& p, const FaceInputs& in, const FaceOutputs& out, std::size_t n_faces);

bool cpu_has_avx2();

/// AVX2 when the CPU supports it, unless INFLOW_WAVES_KERNEL=scalar.
FaceFluxFn select_face_flux();
std::string_view selected_kernel_name();

}  // namespace inflow::kernels
