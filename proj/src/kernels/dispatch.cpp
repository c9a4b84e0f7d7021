#include "voxmap/kernels/kernels.hpp"

namespace voxmap::kernels {

#if defined(VOXMAP_BUILD_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(VOXMAP_BUILD_NEON)
const KernelTable& neon_table();
#endif

const KernelTable& dispatch() {
#if defined(VOXMAP_BUILD_AVX2)
  if (__builtin_cpu_supports("avx2")) return avx2_table();
#endif
#if defined(VOXMAP_BUILD_NEON)
  return neon_table();
#else
  return scalar_table();
#endif
}

}  // namespace voxmap::kernels
