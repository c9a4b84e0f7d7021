#include "voxmap/sim/render.hpp"

#include <algorithm>
#include <limits>

namespace voxmap::sim {

double ray_box_hit(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir, const Aabb& box) {
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) {
    if (dir[a] == 0.0) {
      if (origin[a] < box.min[a] || origin[a] > box.max[a]) return -1.0;
      continue;
    }
    double ta = (box.min[a] - origin[a]) / dir[a];
    double tb = (box.max[a] - origin[a]) / dir[a];
    if (ta > tb) std::swap(ta, tb);
    t_near = std::max(t_near, ta);
    t_far = std::min(t_far, tb);
  }
  if (t_near > t_far || t_far <= 0.0) return -1.0;
  return t_near > 0.0 ? t_near : t_far;
}

DepthImage render_depth(const Scene& scene, const RigidTransform& t_wc, const CameraModel& cam,
                        ExecutionMode mode) {
  cam.validate();
  scene.validate();
  DepthImage img(cam.width, cam.height);
  const double fx = cam.focal_x();
  const double fy = cam.focal_y();
  const double cx = cam.width / 2.0;
  const double cy = cam.height / 2.0;

  auto render_row = [&](int v) {
    for (int u = 0; u < cam.width; ++u) {
      // dir has unit z in the camera frame, so the hit parameter s is the
      // depth along the optical axis.
      const Eigen::Vector3d dir_cam((u + 0.5 - cx) / fx, (v + 0.5 - cy) / fy, 1.0);
      const Eigen::Vector3d dir = t_wc.rotation * dir_cam;
      double best = std::numeric_limits<double>::infinity();
      for (const Aabb& box : scene.boxes) {
        const double s = ray_box_hit(t_wc.translation, dir, box);
        if (s > 0.0 && s < best) best = s;
      }
      img.at(u, v) = best <= cam.max_depth ? static_cast<float>(best) : 0.0f;
    }
  };

  if (mode == ExecutionMode::Sequential) {
    for (int v = 0; v < cam.height; ++v) render_row(v);
  } else {
#pragma omp parallel for schedule(static)
    for (int v = 0; v < cam.height; ++v) render_row(v);
  }
  return img;
}

}  // namespace voxmap::sim
