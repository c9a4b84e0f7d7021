#pragma once

#include "voxmap/exec.hpp"
#include "voxmap/geometry.hpp"
#include "voxmap/sim/scene.hpp"

namespace voxmap::sim {

/// Nearest hit of the ray o + s*d against the box, as an interval parameter
/// s > 0 (entry point, or exit point when o is inside). Negative result
/// means no hit.
double ray_box_hit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, const Aabb& box);

/// Renders the scene into a depth image through the pinhole model. Depth is
/// the distance along the optical axis; pixels with no hit within
/// cam.max_depth hold the invalid sentinel 0.
DepthImage render_depth(const Scene& scene, const RigidTransform& t_wc, const CameraModel& cam,
                        ExecutionMode mode = ExecutionMode::Sequential);

}  // namespace voxmap::sim
