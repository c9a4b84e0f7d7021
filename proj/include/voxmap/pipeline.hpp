#pragma once

#include "voxmap/exec.hpp"
#include "voxmap/geometry.hpp"
#include "voxmap/grid.hpp"
#include "voxmap/integrator.hpp"
#include "voxmap/raytracer.hpp"

namespace voxmap {

struct PipelineConfig {
  GridSpec grid;
  CameraModel camera;
  IntegratorConfig integrator;
  double depth = 6.5;  // clearing range, meters
  TracerMode tracer_mode = TracerMode::Bundled;
  ExecutionMode parallelism = ExecutionMode::DataParallel;

  /// Throws std::invalid_argument on invalid members or depth outside
  /// (0, camera.max_depth].
  void validate() const;
};

struct MeasurementFrame {
  PointCloud cloud;      // camera frame
  RigidTransform t_wc;   // camera -> world
  double timestamp = 0.0;
};

struct PipelineStats {
  double populate_us = 0.0;  // includes the measurement-grid reset
  double trace_us = 0.0;
  double merge_us = 0.0;
  double shift_us = 0.0;
  TraceStats trace;
  PopulateStats populate;
  std::uint64_t occupied_count = 0;
  std::uint64_t freed_count = 0;
  bool shifted = false;
  Eigen::Vector3i shift_offset = Eigen::Vector3i::Zero();
};

/// Cell-wise update of the local grid from a measurement grid: Unknown
/// measurement cells leave the local cell untouched, UnknownTraced cells
/// reset it to Unknown, Free/Occupied cells overwrite it. Throws
/// std::invalid_argument when the grid layouts differ.
void merge_grids(VoxelGrid& loc_grid, const VoxelGrid& ms_grid,
                 ExecutionMode mode = ExecutionMode::Sequential);

/// Grid frame = world frame translated by -grid_origin (axes stay
/// world-aligned), so the camera->grid transform keeps t_wc's rotation.
RigidTransform camera_to_grid_transform(const RigidTransform& t_wc,
                                        const Eigen::Vector3d& grid_origin);

/// Owns the local grid and the scratch measurement grid and runs the
/// five-step update per frame: reset, populate, trace, merge, shift. The
/// local grid recenters on the camera once it drifts a full voxel from the
/// grid center on any axis.
class MappingPipeline {
 public:
  explicit MappingPipeline(PipelineConfig cfg);
  /// Same, but first recenters the grid on initial_position.
  MappingPipeline(PipelineConfig cfg, const Eigen::Vector3d& initial_position);

  PipelineStats integrate(const MeasurementFrame& frame);

  const VoxelGrid& local_grid() const { return local_; }
  const PipelineConfig& config() const { return cfg_; }

 private:
  PipelineConfig cfg_;
  VoxelGrid local_;
  VoxelGrid measurement_;
};

}  // namespace voxmap
