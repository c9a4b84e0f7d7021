#pragma once

#include <vector>

#include "voxmap/geometry.hpp"

namespace voxmap::sim {

/// Camera pose at `position` with the optical axis (+z camera) along world
/// +x, image right along world -y and image down along world -z.
RigidTransform look_along_x(const Eigen::Vector3d& position);

/// Evenly spaced poses from `start` to `end` inclusive, all looking along
/// world +x. frames == 1 yields just the start pose. Throws
/// std::invalid_argument when frames < 1.
std::vector<RigidTransform> sweep_trajectory(const Eigen::Vector3d& start,
                                             const Eigen::Vector3d& end, int frames);

}  // namespace voxmap::sim
