#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "voxmap/exec.hpp"

namespace voxmap {

/// SE(3) rigid transform: rotation then translation. Used for the
/// camera->world, world->grid and camera->grid frame changes.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }

  static RigidTransform from_translation(const Eigen::Vector3d& t) {
    return {Eigen::Matrix3d::Identity(), t};
  }

  static RigidTransform from_rotation(const Eigen::Matrix3d& r,
                                      const Eigen::Vector3d& t = Eigen::Vector3d::Zero()) {
    return {r, t};
  }

  /// R*p + t. Throws std::invalid_argument on non-finite input.
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;

  RigidTransform inverse() const {
    return {rotation.transpose(), -(rotation.transpose() * translation)};
  }

  /// Orthonormal rotation with determinant +1, within tol.
  bool is_valid(double tol = 1e-9) const;
};

/// (a*b)(p) == a(b(p)).
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

inline RigidTransform operator*(const RigidTransform& a, const RigidTransform& b) {
  return compose(a, b);
}

/// Translation component of the camera->grid transform: where the camera
/// center lands in the grid frame.
inline Eigen::Vector3d camera_center_in_grid(const RigidTransform& t_vc) {
  return t_vc.translation;
}

/// Pinhole camera parameterized by field of view. Principal point at the
/// image center; focal lengths derived from the FOV.
struct CameraModel {
  double fov_x = 0.0;  // radians
  double fov_y = 0.0;  // radians
  int width = 0;
  int height = 0;
  double max_depth = 0.0;  // meters

  /// Throws std::invalid_argument if any invariant fails.
  void validate() const;

  double focal_x() const { return (width / 2.0) / std::tan(fov_x / 2.0); }
  double focal_y() const { return (height / 2.0) / std::tan(fov_y / 2.0); }
};

/// Camera-frame obstacle points, structure-of-arrays. Non-finite points are
/// dropped at insertion so the cloud only ever holds valid measurements.
class PointCloud {
 public:
  PointCloud() = default;

  void reserve(std::size_t n) {
    xs_.reserve(n);
    ys_.reserve(n);
    zs_.reserve(n);
  }

  /// Appends a point; silently drops non-finite components.
  void add(double x, double y, double z) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) return;
    xs_.push_back(x);
    ys_.push_back(y);
    zs_.push_back(z);
  }

  void add(const Eigen::Vector3d& p) { add(p.x(), p.y(), p.z()); }

  std::size_t size() const { return xs_.size(); }
  bool empty() const { return xs_.empty(); }

  Eigen::Vector3d point(std::size_t i) const {
    return {xs_[i], ys_[i], zs_[i]};
  }

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  std::span<const double> zs() const { return zs_; }

 private:
  std::vector<double> xs_, ys_, zs_;
};

/// Row-major per-pixel depths in meters. Depths <= 0 or non-finite mark
/// invalid measurements.
struct DepthImage {
  int width = 0;
  int height = 0;
  std::vector<float> depths;

  DepthImage() = default;
  DepthImage(int w, int h) : width(w), height(h), depths(static_cast<std::size_t>(w) * h, 0.0f) {}

  float at(int u, int v) const {
    return depths[static_cast<std::size_t>(v) * width + u];
  }
  float& at(int u, int v) {
    return depths[static_cast<std::size_t>(v) * width + u];
  }

  static bool valid_depth(float d) { return std::isfinite(d) && d > 0.0f; }
};

/// Back-projects every valid pixel through the pinhole model. Points deeper
/// than cam.max_depth are dropped. Output order is row-major over pixels in
/// both execution modes. Throws std::invalid_argument on dimension mismatch.
PointCloud depth_to_cloud(const DepthImage& img, const CameraModel& cam,
                          ExecutionMode mode = ExecutionMode::Sequential);

}  // namespace voxmap
