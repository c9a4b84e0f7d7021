#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "voxmap/voxel_state.hpp"

namespace voxmap {

/// Integer voxel coordinates in the grid frame. May lie outside the grid;
/// bounds are checked against a GridSpec.
struct VoxelCoord {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const VoxelCoord&, const VoxelCoord&) = default;
};

/// Geometry of a dense voxel grid: metric extents, voxel edge length, voxel
/// counts per axis and the world-frame position of the minimum corner.
struct GridSpec {
  double grid_size_x = 0.0;
  double grid_size_y = 0.0;
  double grid_size_z = 0.0;
  double vox_size = 0.0;
  int dims_x = 0;
  int dims_y = 0;
  int dims_z = 0;
  Eigen::Vector3d origin = Eigen::Vector3d::Zero();

  /// Builds a spec with dims = round(size / vox_size) per axis and the given
  /// minimum-corner origin. Throws std::invalid_argument on non-positive
  /// sizes or empty dims.
  static GridSpec create(double size_x, double size_y, double size_z,
                         double vox_size,
                         const Eigen::Vector3d& origin = Eigen::Vector3d::Zero());

  /// Same, but places the origin so that `center` sits at the grid center,
  /// with the half-extent quantized to whole voxels (floor(dims/2) voxels
  /// below the center per axis).
  static GridSpec create_centered(double size_x, double size_y, double size_z,
                                  double vox_size, const Eigen::Vector3d& center);

  std::size_t cell_count() const {
    return static_cast<std::size_t>(dims_x) * static_cast<std::size_t>(dims_y) *
           static_cast<std::size_t>(dims_z);
  }

  /// Voxel-quantized half extent used for centering, per axis.
  Eigen::Vector3d half_extent() const {
    return Eigen::Vector3d(dims_x / 2, dims_y / 2, dims_z / 2) * vox_size;
  }

  Eigen::Vector3d center() const { return origin + half_extent(); }

  bool in_bounds(const VoxelCoord& c) const {
    return c.x >= 0 && c.x < dims_x && c.y >= 0 && c.y < dims_y && c.z >= 0 &&
           c.z < dims_z;
  }

  /// Identical lattice: same dims, voxel size and origin.
  bool same_layout(const GridSpec& other) const;
};

/// idx = x + y*dims_x + z*dims_x*dims_y. No bounds check.
inline std::size_t linear_index_unchecked(const VoxelCoord& c, const GridSpec& s) {
  return static_cast<std::size_t>(c.x) +
         static_cast<std::size_t>(c.y) * static_cast<std::size_t>(s.dims_x) +
         static_cast<std::size_t>(c.z) * static_cast<std::size_t>(s.dims_x) *
             static_cast<std::size_t>(s.dims_y);
}

/// Flat index of an in-bounds coordinate; nullopt if out of bounds.
inline std::optional<std::size_t> linear_index(const VoxelCoord& c, const GridSpec& s) {
  if (!s.in_bounds(c)) return std::nullopt;
  return linear_index_unchecked(c, s);
}

/// Floor division of a grid-frame point by the voxel size. The result may be
/// out of bounds (including negative); the caller checks. Throws
/// std::invalid_argument on non-finite input.
VoxelCoord world_to_voxel(const Eigen::Vector3d& p_grid, const GridSpec& spec);

/// Dense voxel grid. Cells are stored flat in idx order, one byte each.
class VoxelGrid {
 public:
  explicit VoxelGrid(GridSpec spec);

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return cells_.size(); }

  VoxelState at(const VoxelCoord& c) const {
    return cells_[linear_index_unchecked(c, spec_)];
  }
  void set(const VoxelCoord& c, VoxelState v) {
    cells_[linear_index_unchecked(c, spec_)] = v;
  }
  VoxelState operator[](std::size_t idx) const { return cells_[idx]; }

  std::span<const VoxelState> cells() const { return cells_; }
  std::span<VoxelState> cells() { return cells_; }
  std::uint8_t* raw() { return reinterpret_cast<std::uint8_t*>(cells_.data()); }
  const std::uint8_t* raw() const {
    return reinterpret_cast<const std::uint8_t*>(cells_.data());
  }

  /// Sets every cell to Unknown.
  void reset();

  std::size_t count(VoxelState v) const;

  /// Replaces the origin (used by shifting); the lattice dims are unchanged.
  void set_origin(const Eigen::Vector3d& origin) { spec_.origin = origin; }

  friend bool operator==(const VoxelGrid& a, const VoxelGrid& b) {
    return a.spec_.same_layout(b.spec_) && a.cells_ == b.cells_;
  }

 private:
  GridSpec spec_;
  std::vector<VoxelState> cells_;
};

/// Translates the grid content by an integer voxel offset: the returned grid
/// has origin += offset*vox_size, cells present in both extents keep their
/// state, newly exposed cells are Unknown.
VoxelGrid shift_grid_by(const VoxelGrid& grid, const Eigen::Vector3i& offset_voxels);

/// Shifts the grid by whole voxels so that `new_center` is as close to the
/// grid center as the lattice allows. A shift larger than the grid yields an
/// all-Unknown grid.
VoxelGrid shift_grid(const VoxelGrid& grid, const Eigen::Vector3d& new_center);

/// Whole-voxel offset that shift_grid would apply for `new_center`.
Eigen::Vector3i shift_offset_for_center(const GridSpec& spec,
                                        const Eigen::Vector3d& new_center);

}  // namespace voxmap
