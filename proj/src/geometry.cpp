#include "voxmap/geometry.hpp"

#include <omp.h>

#include <numbers>
#include <stdexcept>

namespace voxmap {

Eigen::Vector3d RigidTransform::apply(const Eigen::Vector3d& p) const {
  if (!p.allFinite()) {
    throw std::invalid_argument("RigidTransform::apply: non-finite point");
  }
  return rotation * p + translation;
}

bool RigidTransform::is_valid(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite()) return false;
  const Eigen::Matrix3d gram = rotation.transpose() * rotation;
  if ((gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(rotation.determinant() - 1.0) <= tol;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

void CameraModel::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("CameraModel: width and height must be positive");
  }
  if (!(fov_x > 0.0) || !(fov_x < std::numbers::pi) || !(fov_y > 0.0) ||
      !(fov_y < std::numbers::pi)) {
    throw std::invalid_argument("CameraModel: FOV must lie in (0, pi)");
  }
  if (!(max_depth > 0.0) || !std::isfinite(max_depth)) {
    throw std::invalid_argument("CameraModel: max_depth must be positive and finite");
  }
}

namespace {

void back_project_rows(const DepthImage& img, const CameraModel& cam, int row_begin,
                       int row_end, PointCloud& out) {
  const double fx = cam.focal_x();
  const double fy = cam.focal_y();
  const double cx = cam.width / 2.0;
  const double cy = cam.height / 2.0;
  for (int v = row_begin; v < row_end; ++v) {
    for (int u = 0; u < img.width; ++u) {
      const float d = img.at(u, v);
      if (!DepthImage::valid_depth(d)) continue;
      const double depth = static_cast<double>(d);
      if (depth > cam.max_depth) continue;
      const double x = (u + 0.5 - cx) / fx * depth;
      const double y = (v + 0.5 - cy) / fy * depth;
      out.add(x, y, depth);
    }
  }
}

}  // namespace

PointCloud depth_to_cloud(const DepthImage& img, const CameraModel& cam,
                          ExecutionMode mode) {
  cam.validate();
  if (img.width != cam.width || img.height != cam.height) {
    throw std::invalid_argument("depth_to_cloud: image size does not match camera model");
  }
  if (img.depths.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw std::invalid_argument("depth_to_cloud: depth buffer size mismatch");
  }

  PointCloud cloud;
  cloud.reserve(img.depths.size());

  if (mode == ExecutionMode::Sequential) {
    back_project_rows(img, cam, 0, img.height, cloud);
    return cloud;
  }

  // Per-chunk clouds are concatenated in row order, so the output matches the
  // sequential layout no matter how the chunks are scheduled.
  const int num_chunks = std::max(1, std::min(img.height, omp_get_max_threads() * 4));
  std::vector<PointCloud> partial(static_cast<std::size_t>(num_chunks));
#pragma omp parallel for schedule(static)
  for (int c = 0; c < num_chunks; ++c) {
    const int row_begin = static_cast<int>(static_cast<long long>(img.height) * c / num_chunks);
    const int row_end =
        static_cast<int>(static_cast<long long>(img.height) * (c + 1) / num_chunks);
    back_project_rows(img, cam, row_begin, row_end, partial[static_cast<std::size_t>(c)]);
  }
  for (const PointCloud& part : partial) {
    for (std::size_t i = 0; i < part.size(); ++i) {
      cloud.add(part.xs()[i], part.ys()[i], part.zs()[i]);
    }
  }
  return cloud;
}

}  // namespace voxmap
