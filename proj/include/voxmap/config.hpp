#pragma once

#include <cstdint>
#include <string>

#include "voxmap/pipeline.hpp"

namespace voxmap {

/// Runtime configuration, loadable from a key=value file. Numeric defaults
/// match the standard sensor/grid setup; tracer_mode, parallelism and seed
/// default to bundled / parallel / 1.
struct AppConfig {
  double grid_size_x = 15.0;  // meters
  double grid_size_y = 15.0;
  double grid_size_z = 3.0;
  double vox_size = 0.15;
  double fov_x_deg = 85.0;
  double fov_y_deg = 101.0;
  int width = 320;
  int height = 240;
  double depth = 6.5;  // clearing range and sensor max depth, meters
  int vox_inf = 2;
  TracerMode tracer_mode = TracerMode::Bundled;
  ExecutionMode parallelism = ExecutionMode::DataParallel;
  std::uint64_t seed = 1;
};

/// Parses "key = value" lines; '#' starts a comment, blank lines are
/// skipped. Unknown keys and malformed values throw std::runtime_error.
AppConfig parse_config(const std::string& text);
AppConfig load_config(const std::string& path);

TracerMode parse_tracer_mode(const std::string& value);
ExecutionMode parse_execution_mode(const std::string& value);

CameraModel camera_from_config(const AppConfig& cfg);
GridSpec grid_from_config(const AppConfig& cfg,
                          const Eigen::Vector3d& center = Eigen::Vector3d::Zero());
PipelineConfig pipeline_from_config(const AppConfig& cfg,
                                    const Eigen::Vector3d& center = Eigen::Vector3d::Zero());

}  // namespace voxmap
