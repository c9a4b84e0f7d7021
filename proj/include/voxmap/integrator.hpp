#pragma once

#include <cstdint>

#include "voxmap/exec.hpp"
#include "voxmap/geometry.hpp"
#include "voxmap/grid.hpp"

namespace voxmap {

struct IntegratorConfig {
  int vox_inf = 2;  // inflation radius in voxels; marked cube side is 2*vox_inf+1

  /// Throws std::invalid_argument if vox_inf is negative.
  void validate() const;
};

struct PopulateStats {
  std::uint64_t points_total = 0;
  std::uint64_t points_outside = 0;
};

/// Marks the containing voxel of every transformed point, plus the
/// (2*vox_inf+1)^3 cube around it, Occupied in ms_grid. Points whose
/// containing voxel lies outside the grid are skipped and counted; inflation
/// cubes of in-bounds points are clipped at the grid boundary. All writes
/// store the same value, so parallel execution matches sequential execution
/// byte for byte.
PopulateStats populate_occupied(VoxelGrid& ms_grid, const PointCloud& cloud,
                                const RigidTransform& t_vc, const IntegratorConfig& cfg,
                                ExecutionMode mode = ExecutionMode::Sequential);

}  // namespace voxmap
