#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "inflow/kernels.hpp"

namespace inflow::kernels {

__attribute__((target("avx2"))) void face_flux_avx2(const FaceParams& p, const FaceInputs& in,
                                                     const FaceOutputs& out, std::size_t n_faces) {
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d s = _mm256_set1_pd(p.s_minus);
  const __m256d as = _mm256_set1_pd(std::abs(p.s_minus));
  const __m256d R = _mm256_set1_pd(p.R);
  const __m256d gR = _mm256_set1_pd(p.gamma * p.R);
  const __m256d cv = _mm256_set1_pd(p.cv);
  const __m256d kappa = _mm256_set1_pd(p.kappa);
  const __m256d inv_dxi = _mm256_set1_pd(p.inv_dxi);
  const __m256d zero = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n_faces; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(in.v + i), v1 = _mm256_loadu_pd(in.v + i + 1);
    const __m256d u0 = _mm256_loadu_pd(in.u + i), u1 = _mm256_loadu_pd(in.u + i + 1);
    const __m256d t0 = _mm256_loadu_pd(in.theta + i), t1 = _mm256_loadu_pd(in.theta + i + 1);

    const __m256d vl = _mm256_add_pd(v0, _mm256_mul_pd(half, _mm256_loadu_pd(in.dv + i)));
    const __m256d ul = _mm256_add_pd(u0, _mm256_mul_pd(half, _mm256_loadu_pd(in.du + i)));
    const __m256d tl = _mm256_add_pd(t0, _mm256_mul_pd(half, _mm256_loadu_pd(in.dtheta + i)));
    const __m256d vr = _mm256_sub_pd(v1, _mm256_mul_pd(half, _mm256_loadu_pd(in.dv + i + 1)));
    const __m256d ur = _mm256_sub_pd(u1, _mm256_mul_pd(half, _mm256_loadu_pd(in.du + i + 1)));
    const __m256d tr = _mm256_sub_pd(t1, _mm256_mul_pd(half, _mm256_loadu_pd(in.dtheta + i + 1)));

    const __m256d pl = _mm256_div_pd(_mm256_mul_pd(R, tl), vl);
    const __m256d pr = _mm256_div_pd(_mm256_mul_pd(R, tr), vr);
    const __m256d el = _mm256_add_pd(_mm256_mul_pd(cv, tl), _mm256_mul_pd(half, _mm256_mul_pd(ul, ul)));
    const __m256d er = _mm256_add_pd(_mm256_mul_pd(cv, tr), _mm256_mul_pd(half, _mm256_mul_pd(ur, ur)));
    const __m256d al = _mm256_add_pd(as, _mm256_div_pd(_mm256_sqrt_pd(_mm256_mul_pd(gR, tl)), vl));
    const __m256d ar = _mm256_add_pd(as, _mm256_div_pd(_mm256_sqrt_pd(_mm256_mul_pd(gR, tr)), vr));
    // std::max(al, ar) returns al unless al < ar
    const __m256d a = _mm256_blendv_pd(al, ar, _mm256_cmp_pd(al, ar, _CMP_LT_OQ));

    const __m256d fvl = _mm256_sub_pd(_mm256_sub_pd(zero, _mm256_mul_pd(s, vl)), ul);
    const __m256d fvr = _mm256_sub_pd(_mm256_sub_pd(zero, _mm256_mul_pd(s, vr)), ur);
    const __m256d ful = _mm256_add_pd(_mm256_sub_pd(zero, _mm256_mul_pd(s, ul)), pl);
    const __m256d fur = _mm256_add_pd(_mm256_sub_pd(zero, _mm256_mul_pd(s, ur)), pr);
    const __m256d fel = _mm256_add_pd(_mm256_sub_pd(zero, _mm256_mul_pd(s, el)), _mm256_mul_pd(pl, ul));
    const __m256d fer = _mm256_add_pd(_mm256_sub_pd(zero, _mm256_mul_pd(s, er)), _mm256_mul_pd(pr, ur));

    const __m256d heat = _mm256_div_pd(_mm256_mul_pd(kappa, _mm256_mul_pd(_mm256_sub_pd(t1, t0), inv_dxi)),
                                       _mm256_mul_pd(half, _mm256_add_pd(v0, v1)));
    const __m256d ha = _mm256_mul_pd(half, a);

    _mm256_storeu_pd(out.f_v + i, _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(fvl, fvr)),
                                                _mm256_mul_pd(ha, _mm256_sub_pd(vr, vl))));
    _mm256_storeu_pd(out.f_u + i, _mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(ful, fur)),
                                                _mm256_mul_pd(ha, _mm256_sub_pd(ur, ul))));
    _mm256_storeu_pd(out.f_e + i,
                     _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(half, _mm256_add_pd(fel, fer)),
                                                 _mm256_mul_pd(ha, _mm256_sub_pd(er, el))),
                                   heat));
  }
  if (i < n_faces) {
    const FaceInputs tail{in.v + i, in.u + i, in.theta + i, in.dv + i, in.du + i, in.dtheta + i};
    const FaceOutputs tout{out.f_v + i, out.f_u + i, out.f_e + i};
    face_flux_scalar(p, tail, tout, n_faces - i);
  }
}

}  // namespace inflow::kernels
