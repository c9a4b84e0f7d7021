#include "voxmap/sim/trajectory.hpp"

#include <stdexcept>

namespace voxmap::sim {

RigidTransform look_along_x(const Eigen::Vector3d& position) {
  Eigen::Matrix3d r;
  r.col(0) = Eigen::Vector3d(0.0, -1.0, 0.0);  // camera x (image right)
  r.col(1) = Eigen::Vector3d(0.0, 0.0, -1.0);  // camera y (image down)
  r.col(2) = Eigen::Vector3d(1.0, 0.0, 0.0);   // camera z (optical axis)
  return RigidTransform::from_rotation(r, position);
}

std::vector<RigidTransform> sweep_trajectory(const Eigen::Vector3d& start,
                                             const Eigen::Vector3d& end, int frames) {
  if (frames < 1) throw std::invalid_argument("sweep_trajectory: frames must be >= 1");
  std::vector<RigidTransform> poses;
  poses.reserve(static_cast<std::size_t>(frames));
  for (int i = 0; i < frames; ++i) {
    const double s = frames == 1 ? 0.0 : static_cast<double>(i) / (frames - 1);
    poses.push_back(look_along_x(start + s * (end - start)));
  }
  return poses;
}

}  // namespace voxmap::sim
