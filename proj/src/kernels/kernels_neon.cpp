#include "voxmap/kernels/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace voxmap::kernels {

namespace {

void merge_neon(std::uint8_t* local, const std::uint8_t* measurement, std::size_t n) {
  const uint8x16_t three = vdupq_n_u8(3);
  const uint8x16_t zero = vdupq_n_u8(0);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t loc = vld1q_u8(local + i);
    const uint8x16_t ms = vld1q_u8(measurement + i);
    const uint8x16_t is_unknown = vceqq_u8(ms, zero);
    const uint8x16_t is_traced = vceqq_u8(ms, three);
    const uint8x16_t mapped = vbicq_u8(ms, is_traced);
    const uint8x16_t result = vbslq_u8(is_unknown, loc, mapped);
    vst1q_u8(local + i, result);
  }
  if (i < n) scalar_table().merge(local + i, measurement + i, n - i);
}

void transform_voxelize_neon(const double* xs, const double* ys, const double* zs,
                             std::size_t n, const double* rotation,
                             const double* translation, double vox_size, std::int32_t* cx,
                             std::int32_t* cy, std::int32_t* cz) {
  const float64x2_t vox = vdupq_n_f64(vox_size);
  const float64x2_t lo = vdupq_n_f64(-1e9);
  const float64x2_t hi = vdupq_n_f64(1e9);
  std::int32_t* const out[3] = {cx, cy, cz};
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t x = vld1q_f64(xs + i);
    const float64x2_t y = vld1q_f64(ys + i);
    const float64x2_t z = vld1q_f64(zs + i);
    for (int a = 0; a < 3; ++a) {
      float64x2_t acc = vdupq_n_f64(translation[a]);
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(rotation[3 * a + 0]), x));
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(rotation[3 * a + 1]), y));
      acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(rotation[3 * a + 2]), z));
      float64x2_t f = vrndmq_f64(vdivq_f64(acc, vox));
      f = vminq_f64(vmaxq_f64(f, lo), hi);
      const int64x2_t wide = vcvtq_s64_f64(f);
      out[a][i] = static_cast<std::int32_t>(vgetq_lane_s64(wide, 0));
      out[a][i + 1] = static_cast<std::int32_t>(vgetq_lane_s64(wide, 1));
    }
  }
  if (i < n) {
    scalar_table().transform_voxelize(xs + i, ys + i, zs + i, n - i, rotation, translation,
                                      vox_size, cx + i, cy + i, cz + i);
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{merge_neon, transform_voxelize_neon, "neon"};
  return table;
}

}  // namespace voxmap::kernels

#endif  // defined(__aarch64__)
