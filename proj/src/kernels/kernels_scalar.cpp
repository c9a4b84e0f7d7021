#include <algorithm>
#include <cmath>

#include "voxmap/kernels/kernels.hpp"

namespace voxmap::kernels {

namespace {

void merge_scalar(std::uint8_t* local, const std::uint8_t* measurement, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t m = measurement[i];
    if (m == 0) continue;
    local[i] = (m == 3) ? std::uint8_t{0} : m;
  }
}

void transform_voxelize_scalar(const double* xs, const double* ys, const double* zs,
                               std::size_t n, const double* rotation,
                               const double* translation, double vox_size,
                               std::int32_t* cx, std::int32_t* cy, std::int32_t* cz) {
  std::int32_t* const out[3] = {cx, cy, cz};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xs[i];
    const double y = ys[i];
    const double z = zs[i];
    for (int a = 0; a < 3; ++a) {
      double acc = translation[a];
      acc += rotation[3 * a + 0] * x;
      acc += rotation[3 * a + 1] * y;
      acc += rotation[3 * a + 2] * z;
      double f = std::floor(acc / vox_size);
      f = std::min(std::max(f, -1e9), 1e9);
      out[a][i] = static_cast<std::int32_t>(f);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{merge_scalar, transform_voxelize_scalar, "scalar"};
  return table;
}

}  // namespace voxmap::kernels
