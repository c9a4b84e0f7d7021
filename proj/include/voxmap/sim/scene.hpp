#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace voxmap::sim {

struct Aabb {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  /// Throws std::invalid_argument unless min < max on every axis.
  void validate() const;
  bool contains(const Eigen::Vector3d& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
};

/// Axis-aligned box world. The canonical worlds assume a camera near the
/// world origin looking along +x.
struct Scene {
  std::vector<Aabb> boxes;

  void validate() const;

  static Scene empty();
  /// Large wall normal to +x at the given distance; spans the full camera
  /// FOV at that range.
  static Scene wall(double distance = 5.5);
  /// Seeded thin pillar panels at one shared depth in front of a backdrop
  /// wall that fills the camera frustum within sensor range. Panel edges
  /// snap to the default 0.15 m voxel lattice with small insets. count is
  /// capped at the ten lane slots.
  static Scene box_field(std::uint64_t seed, int count = 10);
};

/// Accepts a canonical name ("empty", "wall", "boxes") or a path to a scene
/// file with one "box minx miny minz maxx maxy maxz" line per box. The seed
/// only affects "boxes". Throws std::runtime_error on unknown names or
/// malformed files.
Scene load_scene(const std::string& name_or_path, std::uint64_t seed);

void save_scene(const Scene& scene, const std::string& path);

}  // namespace voxmap::sim
