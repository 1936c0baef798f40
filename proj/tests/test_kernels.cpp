#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "inflow/kernels.hpp"

using namespace inflow::kernels;

namespace {

struct Case {
  std::vector<double> v, u, th, dv, du, dth;
  std::vector<double> fv, fu, fe;

  explicit Case(std::size_t n_faces, std::mt19937_64& rng) {
    const std::size_t n = n_faces + 1;
    std::uniform_real_distribution<double> pos(0.5, 2.0), vel(-1.5, 1.5), slope(-0.05, 0.05);
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(pos(rng));
      u.push_back(vel(rng));
      th.push_back(pos(rng));
      dv.push_back(slope(rng));
      du.push_back(slope(rng));
      dth.push_back(slope(rng));
    }
    fv.assign(n_faces, 0.0);
    fu.assign(n_faces, 0.0);
    fe.assign(n_faces, 0.0);
  }
  FaceInputs in() const { return {v.data(), u.data(), th.data(), dv.data(), du.data(), dth.data()}; }
  FaceOutputs out() { return {fv.data(), fu.data(), fe.data()}; }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("avx2 face flux is bitwise identical to scalar") {
  if (!cpu_has_avx2()) {
    MESSAGE("CPU lacks AVX2; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(7);
  const FaceParams p{-1.07, 1.0, 1.4, 2.5, 1.0, 3.0};
  for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 31u, 64u, 1023u}) {
    for (int rep = 0; rep < 20; ++rep) {
      Case a(n, rng);
      Case b = a;
      face_flux_scalar(p, a.in(), a.out(), n);
      face_flux_avx2(p, b.in(), b.out(), n);
      CHECK(same_bits(a.fv, b.fv));
      CHECK(same_bits(a.fu, b.fu));
      CHECK(same_bits(a.fe, b.fe));
    }
  }
}

TEST_CASE("kernels agree on a constant state with s- = 0") {
  // signed zeros in the fluxes are the usual place for a vector port to drift
  if (!cpu_has_avx2()) return;
  const std::size_t n = 9;
  std::mt19937_64 rng(1);
  Case a(n, rng);
  for (std::size_t i = 0; i <= n; ++i) {
    a.v[i] = 1.0;
    a.u[i] = 0.0;
    a.th[i] = 1.0;
    a.dv[i] = a.du[i] = a.dth[i] = 0.0;
  }
  Case b = a;
  const FaceParams p{0.0, 1.0, 1.4, 2.5, 1.0, 1.0};
  face_flux_scalar(p, a.in(), a.out(), n);
  face_flux_avx2(p, b.in(), b.out(), n);
  CHECK(same_bits(a.fv, b.fv));
  CHECK(same_bits(a.fu, b.fu));
  CHECK(same_bits(a.fe, b.fe));
}

TEST_CASE("flux of a constant state is the exact physical flux") {
  const std::size_t n = 6;
  std::mt19937_64 rng(3);
  Case a(n, rng);
  for (std::size_t i = 0; i <= n; ++i) {
    a.v[i] = 0.8;
    a.u[i] = 1.1;
    a.th[i] = 1.3;
    a.dv[i] = a.du[i] = a.dth[i] = 0.0;
  }
  const double s = -1.2, R = 1.0, cv = 2.5;
  face_flux_scalar({s, R, 1.4, cv, 1.0, 4.0}, a.in(), a.out(), n);
  const double p = R * 1.3 / 0.8;
  const double E = cv * 1.3 + 0.5 * 1.1 * 1.1;
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(a.fv[i] == doctest::Approx(-s * 0.8 - 1.1).epsilon(1e-15));
    CHECK(a.fu[i] == doctest::Approx(-s * 1.1 + p).epsilon(1e-15));
    CHECK(a.fe[i] == doctest::Approx(-s * E + p * 1.1).epsilon(1e-15));
  }
}

TEST_CASE("dispatch honours the scalar override") {
  setenv("INFLOW_WAVES_KERNEL", "scalar", 1);
  CHECK(select_face_flux() == &face_flux_scalar);
  CHECK(selected_kernel_name() == "scalar");
  unsetenv("INFLOW_WAVES_KERNEL");
  if (cpu_has_avx2()) CHECK(select_face_flux() == &face_flux_avx2);
}
