#include <algorithm>
#include <cmath>

#include "inflow/kernels.hpp"

namespace inflow::kernels {

void face_flux_scalar(const FaceParams& p, const FaceInputs& in, const FaceOutputs& out, std::size_t n_faces) {
  const double s = p.s_minus;
  const double as = std::abs(s);
  const double gR = p.gamma * p.R;
  for (std::size_t i = 0; i < n_faces; ++i) {
    const double vl = in.v[i] + 0.5 * in.dv[i];
    const double ul = in.u[i] + 0.5 * in.du[i];
    const double tl = in.theta[i] + 0.5 * in.dtheta[i];
    const double vr = in.v[i + 1] - 0.5 * in.dv[i + 1];
    const double ur = in.u[i + 1] - 0.5 * in.du[i + 1];
    const double tr = in.theta[i + 1] - 0.5 * in.dtheta[i + 1];

    const double pl = p.R * tl / vl;
    const double pr = p.R * tr / vr;
    const double el = p.cv * tl + 0.5 * (ul * ul);
    const double er = p.cv * tr + 0.5 * (ur * ur);
    const double al = as + std::sqrt(gR * tl) / vl;
    const double ar = as + std::sqrt(gR * tr) / vr;
    const double a = std::max(al, ar);

    // written as 0 - x (not -x) so signed zeros match the vector kernel
    const double fvl = (0.0 - s * vl) - ul, fvr = (0.0 - s * vr) - ur;
    const double ful = (0.0 - s * ul) + pl, fur = (0.0 - s * ur) + pr;
    const double fel = (0.0 - s * el) + pl * ul, fer = (0.0 - s * er) + pr * ur;

    const double heat = p.kappa * ((in.theta[i + 1] - in.theta[i]) * p.inv_dxi) / (0.5 * (in.v[i] + in.v[i + 1]));

    out.f_v[i] = 0.5 * (fvl + fvr) - 0.5 * a * (vr - vl);
    out.f_u[i] = 0.5 * (ful + fur) - 0.5 * a * (ur - ul);
    out.f_e[i] = (0.5 * (fel + fer) - 0.5 * a * (er - el)) - heat;
  }
}

}  // namespace inflow::kernels
