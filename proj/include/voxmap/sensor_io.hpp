#pragma once

#include <string>

#include "voxmap/geometry.hpp"

namespace voxmap {

/// Text clouds: one "x y z" triple per line, meters, camera frame. Blank
/// lines and '#' comment lines are skipped on load. Throws
/// std::runtime_error on I/O or parse errors.
PointCloud load_point_cloud(const std::string& path);
void save_point_cloud(const PointCloud& cloud, const std::string& path);

/// Depth images, two interchangeable on-disk forms picked by extension:
///   .pgm  binary PGM, 16-bit big-endian millimeters, 0 marks invalid
///   .f32  "DEPTHF32" magic, width/height, little-endian float32 meters
/// Throws std::runtime_error on I/O errors, parse errors or an unsupported
/// extension.
DepthImage load_depth_image(const std::string& path);
void save_depth_image(const DepthImage& img, const std::string& path);

}  // namespace voxmap
