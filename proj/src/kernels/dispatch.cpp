#include <cstdlib>
#include <string_view>

#include "inflow/kernels.hpp"

namespace inflow::kernels {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

bool forced_scalar() {
  const char* env = std::getenv("INFLOW_WAVES_KERNEL");
  return env != nullptr && std::string_view(env) == "scalar";
}

}  // namespace

FaceFluxFn select_face_flux() {
  if (!forced_scalar() && cpu_has_avx2()) return &face_flux_avx2;
  return &face_flux_scalar;
}

std::string_view selected_kernel_name() {
  return select_face_flux() == &face_flux_avx2 ? "avx2" : "scalar";
}

}  // namespace inflow::kernels
