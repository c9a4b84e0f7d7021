#include "voxmap/grid.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace voxmap {

namespace {

int dims_from_extent(double size, double vox) {
  return static_cast<int>(std::lround(size / vox));
}

}  // namespace

GridSpec GridSpec::create(double size_x, double size_y, double size_z,
                          double vox_size, const Eigen::Vector3d& origin) {
  if (!(vox_size > 0.0)) {
    throw std::invalid_argument("vox_size must be positive");
  }
  if (!(size_x > 0.0) || !(size_y > 0.0) || !(size_z > 0.0)) {
    throw std::invalid_argument("grid sizes must be positive");
  }
  if (!origin.allFinite()) {
    throw std::invalid_argument("grid origin must be finite");
  }
  GridSpec s;
  s.grid_size_x = size_x;
  s.grid_size_y = size_y;
  s.grid_size_z = size_z;
  s.vox_size = vox_size;
  s.dims_x = dims_from_extent(size_x, vox_size);
  s.dims_y = dims_from_extent(size_y, vox_size);
  s.dims_z = dims_from_extent(size_z, vox_size);
  s.origin = origin;
  if (s.dims_x < 1 || s.dims_y < 1 || s.dims_z < 1) {
    throw std::invalid_argument("grid must be at least one voxel per axis");
  }
  return s;
}

GridSpec GridSpec::create_centered(double size_x, double size_y, double size_z,
                                   double vox_size, const Eigen::Vector3d& center) {
  GridSpec s = create(size_x, size_y, size_z, vox_size);
  s.origin = center - s.half_extent();
  if (!s.origin.allFinite()) {
    throw std::invalid_argument("grid center must be finite");
  }
  return s;
}

bool GridSpec::same_layout(const GridSpec& other) const {
  return dims_x == other.dims_x && dims_y == other.dims_y &&
         dims_z == other.dims_z && vox_size == other.vox_size &&
         origin == other.origin;
}

VoxelCoord world_to_voxel(const Eigen::Vector3d& p_grid, const GridSpec& spec) {
  if (!p_grid.allFinite()) {
    throw std::invalid_argument("world_to_voxel: non-finite point");
  }
  return VoxelCoord{
      static_cast<int>(std::floor(p_grid.x() / spec.vox_size)),
      static_cast<int>(std::floor(p_grid.y() / spec.vox_size)),
      static_cast<int>(std::floor(p_grid.z() / spec.vox_size)),
  };
}

VoxelGrid::VoxelGrid(GridSpec spec)
    : spec_(spec), cells_(spec.cell_count(), VoxelState::Unknown) {}

void VoxelGrid::reset() {
  std::fill(cells_.begin(), cells_.end(), VoxelState::Unknown);
}

std::size_t VoxelGrid::count(VoxelState v) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), v));
}

VoxelGrid shift_grid_by(const VoxelGrid& grid, const Eigen::Vector3i& offset) {
  const GridSpec& old_spec = grid.spec();
  GridSpec new_spec = old_spec;
  new_spec.origin = old_spec.origin + offset.cast<double>() * old_spec.vox_size;
  VoxelGrid out(new_spec);

  // New cell (x,y,z) sits at the world position of old cell (x,y,z)+offset.
  // Copy the overlapping x-runs row by row.
  const int x_begin = std::max(0, -offset.x());
  const int x_end = std::min(old_spec.dims_x, old_spec.dims_x - offset.x());
  if (x_begin >= x_end) return out;
  const std::size_t run = static_cast<std::size_t>(x_end - x_begin);

  for (int z = 0; z < old_spec.dims_z; ++z) {
    const int src_z = z + offset.z();
    if (src_z < 0 || src_z >= old_spec.dims_z) continue;
    for (int y = 0; y < old_spec.dims_y; ++y) {
      const int src_y = y + offset.y();
      if (src_y < 0 || src_y >= old_spec.dims_y) continue;
      const std::size_t dst =
          linear_index_unchecked({x_begin, y, z}, new_spec);
      const std::size_t src =
          linear_index_unchecked({x_begin + offset.x(), src_y, src_z}, old_spec);
      std::memcpy(out.raw() + dst, grid.raw() + src, run);
    }
  }
  return out;
}

Eigen::Vector3i shift_offset_for_center(const GridSpec& spec,
                                        const Eigen::Vector3d& new_center) {
  const Eigen::Vector3d ideal_origin = new_center - spec.half_extent();
  const Eigen::Vector3d delta = (ideal_origin - spec.origin) / spec.vox_size;
  return Eigen::Vector3i(static_cast<int>(std::lround(delta.x())),
                         static_cast<int>(std::lround(delta.y())),
                         static_cast<int>(std::lround(delta.z())));
}

VoxelGrid shift_grid(const VoxelGrid& grid, const Eigen::Vector3d& new_center) {
  if (!new_center.allFinite()) {
    throw std::invalid_argument("shift_grid: non-finite center");
  }
  return shift_grid_by(grid, shift_offset_for_center(grid.spec(), new_center));
}

}  // namespace voxmap
