#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <vector>

#include "voxmap/exec.hpp"
#include "voxmap/geometry.hpp"
#include "voxmap/grid.hpp"

namespace voxmap {

/// Bundle of rays covering the camera frustum at voxel resolution: one ray
/// per integer target (x_i, y_i, vox_depth) on the end plane, with
/// |x_i| <= (vox_width-1)/2 and |y_i| <= (vox_height-1)/2.
struct RayBundle {
  int vox_depth = 0;
  int vox_width = 0;   // odd
  int vox_height = 0;  // odd

  std::size_t ray_count() const {
    return static_cast<std::size_t>(vox_width) * static_cast<std::size_t>(vox_height);
  }
};

/// vox_depth = round(depth / vox_size) (at least 1); the plane dimensions are
/// 2*round(tan(fov/2)*vox_depth)+1 per axis, odd by construction. Throws
/// std::invalid_argument on non-positive depth or vox_size and on invalid
/// camera models.
RayBundle bundle_dimensions(const CameraModel& cam, double depth, double vox_size);

struct Ray {
  Eigen::Vector3d start = Eigen::Vector3d::Zero();  // grid frame, meters
  Eigen::Vector3d dir = Eigen::Vector3d::Zero();    // grid frame, need not be unit
  double max_dist = 0.0;                            // meters along the ray
};

/// Throws std::invalid_argument on non-finite fields, zero direction or
/// non-positive max_dist.
void validate_ray(const Ray& ray);

struct TraceStats {
  std::uint64_t rays_traced = 0;
  std::uint64_t voxels_freed = 0;
  std::uint64_t voxels_marked_unknown_traced = 0;
  std::uint64_t voxels_skipped_out_of_bounds = 0;

  TraceStats& operator+=(const TraceStats& o) {
    rays_traced += o.rays_traced;
    voxels_freed += o.voxels_freed;
    voxels_marked_unknown_traced += o.voxels_marked_unknown_traced;
    voxels_skipped_out_of_bounds += o.voxels_skipped_out_of_bounds;
    return *this;
  }
};

/// One ray per bundle target, row-major over (y_i, x_i). Each ray starts at
/// the camera center (the transform's translation), points along the rotated
/// target offset, and is capped at vox_size*sqrt(x_i^2 + y_i^2 + vox_depth^2).
std::vector<Ray> generate_rays(const RayBundle& bundle, const RigidTransform& t_vc,
                               double vox_size);

/// Amanatides-Woo grid traversal. Visits the voxel coordinates intersected by
/// the ray segment in order, starting with the voxel containing ray.start and
/// including coordinates outside any particular grid's bounds. `visit` takes
/// a VoxelCoord and returns false to stop early. When two or three boundary
/// crossings coincide the lower-index axis steps first, one axis per step.
/// Crossings within kTraversalStopEpsilon of max_dist do not enter the next
/// cell: a ray whose max_dist lies exactly on a lattice plane then stops on
/// that plane deterministically instead of depending on the sign of the
/// accumulated rounding error in t_max.
inline constexpr double kTraversalStopEpsilon = 1e-10;  // meters

template <typename Visitor>
void walk_ray(const Ray& ray, double vox_size, Visitor&& visit) {
  const Eigen::Vector3d dir = ray.dir.normalized();
  const Eigen::Vector3d& start = ray.start;
  constexpr double inf = std::numeric_limits<double>::infinity();

  int cur[3];
  int step[3];
  double t_max[3];
  double t_delta[3];
  for (int a = 0; a < 3; ++a) {
    cur[a] = static_cast<int>(std::floor(start[a] / vox_size));
    if (dir[a] > 0.0) {
      step[a] = 1;
      t_max[a] = ((cur[a] + 1) * vox_size - start[a]) / dir[a];
      t_delta[a] = vox_size / dir[a];
    } else if (dir[a] < 0.0) {
      step[a] = -1;
      t_max[a] = (cur[a] * vox_size - start[a]) / dir[a];
      t_delta[a] = vox_size / -dir[a];
    } else {
      step[a] = 0;
      t_max[a] = inf;
      t_delta[a] = inf;
    }
  }

  if (!visit(VoxelCoord{cur[0], cur[1], cur[2]})) return;
  for (;;) {
    int axis;
    if (t_max[0] <= t_max[1] && t_max[0] <= t_max[2]) {
      axis = 0;
    } else if (t_max[1] <= t_max[2]) {
      axis = 1;
    } else {
      axis = 2;
    }
    if (t_max[axis] >= ray.max_dist - kTraversalStopEpsilon) return;
    cur[axis] += step[axis];
    t_max[axis] += t_delta[axis];
    if (!visit(VoxelCoord{cur[0], cur[1], cur[2]})) return;
  }
}

/// Single-ray clearing pass. Walks the ray through ms_grid; cells start
/// receiving Free, and after the walk passes an Occupied cell (left
/// unchanged) subsequent cells receive UnknownTraced instead. Out-of-bounds
/// coordinates before grid entry are counted and skipped; the walk ends once
/// the ray has entered and then left the grid.
TraceStats traverse_ray(VoxelGrid& ms_grid, const Ray& ray);

/// Applies traverse_ray to every bundle ray. Sequential mode processes rays
/// in row-major target order; parallel mode distributes rays across threads
/// with single-cell atomic writes.
TraceStats trace_bundle(VoxelGrid& ms_grid, const RayBundle& bundle,
                        const RigidTransform& t_vc, double vox_size,
                        ExecutionMode mode = ExecutionMode::Sequential);

/// Integer line walk between lattice points, endpoints included, visiting one
/// voxel per driving-axis column. `visit` returns false to stop early.
template <typename Visitor>
void bresenham_line(const VoxelCoord& from, const VoxelCoord& to, Visitor&& visit) {
  int x = from.x, y = from.y, z = from.z;
  const int dx = std::abs(to.x - x), dy = std::abs(to.y - y), dz = std::abs(to.z - z);
  const int sx = to.x > x ? 1 : -1;
  const int sy = to.y > y ? 1 : -1;
  const int sz = to.z > z ? 1 : -1;

  if (dx >= dy && dx >= dz) {
    int p1 = 2 * dy - dx, p2 = 2 * dz - dx;
    while (x != to.x) {
      if (!visit(VoxelCoord{x, y, z})) return;
      if (p1 >= 0) {
        y += sy;
        p1 -= 2 * dx;
      }
      if (p2 >= 0) {
        z += sz;
        p2 -= 2 * dx;
      }
      p1 += 2 * dy;
      p2 += 2 * dz;
      x += sx;
    }
  } else if (dy >= dx && dy >= dz) {
    int p1 = 2 * dx - dy, p2 = 2 * dz - dy;
    while (y != to.y) {
      if (!visit(VoxelCoord{x, y, z})) return;
      if (p1 >= 0) {
        x += sx;
        p1 -= 2 * dy;
      }
      if (p2 >= 0) {
        z += sz;
        p2 -= 2 * dy;
      }
      p1 += 2 * dx;
      p2 += 2 * dz;
      y += sy;
    }
  } else {
    int p1 = 2 * dy - dz, p2 = 2 * dx - dz;
    while (z != to.z) {
      if (!visit(VoxelCoord{x, y, z})) return;
      if (p1 >= 0) {
        y += sy;
        p1 -= 2 * dz;
      }
      if (p2 >= 0) {
        x += sx;
        p2 -= 2 * dz;
      }
      p1 += 2 * dy;
      p2 += 2 * dx;
      z += sz;
    }
  }
  visit(VoxelCoord{to.x, to.y, to.z});
}

/// Per-pixel comparison baseline: for every cloud point, walks the Bresenham
/// line from the camera's voxel to the point's voxel and sets traversed
/// non-Occupied cells Free. The endpoint voxel is excluded (it holds the
/// obstacle). Out-of-bounds cells are counted and skipped.
TraceStats bresenham_trace_image(VoxelGrid& ms_grid, const PointCloud& cloud,
                                 const RigidTransform& t_vc,
                                 ExecutionMode mode = ExecutionMode::Sequential);

}  // namespace voxmap
