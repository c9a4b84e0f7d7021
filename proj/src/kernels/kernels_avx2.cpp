#include <immintrin.h>

#include "voxmap/kernels/kernels.hpp"

namespace voxmap::kernels {

namespace {

void merge_avx2(std::uint8_t* local, const std::uint8_t* measurement, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256i three = _mm256_set1_epi8(3);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i loc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(local + i));
    const __m256i ms = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(measurement + i));
    const __m256i is_unknown = _mm256_cmpeq_epi8(ms, zero);
    const __m256i is_traced = _mm256_cmpeq_epi8(ms, three);
    const __m256i mapped = _mm256_andnot_si256(is_traced, ms);
    const __m256i result = _mm256_blendv_epi8(mapped, loc, is_unknown);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(local + i), result);
  }
  if (i < n) scalar_table().merge(local + i, measurement + i, n - i);
}

void transform_voxelize_avx2(const double* xs, const double* ys, const double* zs,
                             std::size_t n, const double* rotation,
                             const double* translation, double vox_size, std::int32_t* cx,
                             std::int32_t* cy, std::int32_t* cz) {
  const __m256d vox = _mm256_set1_pd(vox_size);
  const __m256d lo = _mm256_set1_pd(-1e9);
  const __m256d hi = _mm256_set1_pd(1e9);
  std::int32_t* const out[3] = {cx, cy, cz};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    const __m256d z = _mm256_loadu_pd(zs + i);
    for (int a = 0; a < 3; ++a) {
      __m256d acc = _mm256_set1_pd(translation[a]);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(rotation[3 * a + 0]), x));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(rotation[3 * a + 1]), y));
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(rotation[3 * a + 2]), z));
      __m256d f = _mm256_floor_pd(_mm256_div_pd(acc, vox));
      f = _mm256_min_pd(_mm256_max_pd(f, lo), hi);
      _mm_storeu_si128(reinterpret_cast<__m128i*>(out[a] + i), _mm256_cvttpd_epi32(f));
    }
  }
  if (i < n) {
    scalar_table().transform_voxelize(xs + i, ys + i, zs + i, n - i, rotation, translation,
                                      vox_size, cx + i, cy + i, cz + i);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{merge_avx2, transform_voxelize_avx2, "avx2"};
  return table;
}

}  // namespace voxmap::kernels
