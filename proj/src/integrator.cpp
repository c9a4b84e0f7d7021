#include "voxmap/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <vector>

#include "voxmap/kernels/kernels.hpp"

namespace voxmap {

void IntegratorConfig::validate() const {
  if (vox_inf < 0) {
    throw std::invalid_argument("IntegratorConfig: vox_inf must be non-negative");
  }
}

namespace {

struct VoxelizedBatch {
  std::vector<std::int32_t> x, y, z;
};

VoxelizedBatch voxelize_points(const PointCloud& cloud, const RigidTransform& t_vc,
                               double vox_size, const kernels::KernelTable& table) {
  VoxelizedBatch batch;
  const std::size_t n = cloud.size();
  batch.x.resize(n);
  batch.y.resize(n);
  batch.z.resize(n);
  if (n == 0) return batch;
  double rotation[9];
  Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> rotation_map(rotation);
  rotation_map = t_vc.rotation;
  const double translation[3] = {t_vc.translation.x(), t_vc.translation.y(),
                                 t_vc.translation.z()};
  table.transform_voxelize(cloud.xs().data(), cloud.ys().data(), cloud.zs().data(), n,
                           rotation, translation, vox_size, batch.x.data(), batch.y.data(),
                           batch.z.data());
  return batch;
}

}  // namespace

PopulateStats populate_occupied(VoxelGrid& ms_grid, const PointCloud& cloud,
                                const RigidTransform& t_vc, const IntegratorConfig& cfg,
                                ExecutionMode mode) {
  cfg.validate();
  const GridSpec& spec = ms_grid.spec();
  const kernels::KernelTable& table = mode == ExecutionMode::Sequential
                                          ? kernels::scalar_table()
                                          : kernels::dispatch();
  const VoxelizedBatch batch = voxelize_points(cloud, t_vc, spec.vox_size, table);

  const int r = cfg.vox_inf;
  const auto occupied = static_cast<std::uint8_t>(VoxelState::Occupied);
  std::uint8_t* const raw = ms_grid.raw();
  const auto n = static_cast<std::int64_t>(cloud.size());

  // Returns true when the point's containing voxel is out of bounds. Relaxed
  // atomic stores make concurrent same-value writes well defined.
  auto mark_point = [&](std::int64_t i) -> bool {
    const int cx = batch.x[static_cast<std::size_t>(i)];
    const int cy = batch.y[static_cast<std::size_t>(i)];
    const int cz = batch.z[static_cast<std::size_t>(i)];
    if (cx < 0 || cy < 0 || cz < 0 || cx >= spec.dims_x || cy >= spec.dims_y ||
        cz >= spec.dims_z) {
      return true;
    }
    const int x0 = std::max(cx - r, 0);
    const int x1 = std::min(cx + r, spec.dims_x - 1);
    const int y0 = std::max(cy - r, 0);
    const int y1 = std::min(cy + r, spec.dims_y - 1);
    const int z0 = std::max(cz - r, 0);
    const int z1 = std::min(cz + r, spec.dims_z - 1);
    for (int z = z0; z <= z1; ++z) {
      for (int y = y0; y <= y1; ++y) {
        std::size_t idx = linear_index_unchecked({x0, y, z}, spec);
        for (int x = x0; x <= x1; ++x, ++idx) {
          std::atomic_ref<std::uint8_t>(raw[idx]).store(occupied, std::memory_order_relaxed);
        }
      }
    }
    return false;
  };

  std::uint64_t outside = 0;
  if (mode == ExecutionMode::Sequential) {
    for (std::int64_t i = 0; i < n; ++i) {
      if (mark_point(i)) ++outside;
    }
  } else {
#pragma omp parallel for schedule(static) reduction(+ : outside)
    for (std::int64_t i = 0; i < n; ++i) {
      if (mark_point(i)) ++outside;
    }
  }

  PopulateStats stats;
  stats.points_total = cloud.size();
  stats.points_outside = outside;
  return stats;
}

}  // namespace voxmap
