#include "voxmap/raytracer.hpp"

#include <atomic>
#include <stdexcept>

namespace voxmap {

RayBundle bundle_dimensions(const CameraModel& cam, double depth, double vox_size) {
  cam.validate();
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    throw std::invalid_argument("bundle_dimensions: depth must be positive and finite");
  }
  if (!(vox_size > 0.0) || !std::isfinite(vox_size)) {
    throw std::invalid_argument("bundle_dimensions: vox_size must be positive and finite");
  }
  RayBundle b;
  b.vox_depth = std::max(1, static_cast<int>(std::lround(depth / vox_size)));
  b.vox_width = 2 * static_cast<int>(std::lround(std::tan(cam.fov_x / 2.0) * b.vox_depth)) + 1;
  b.vox_height = 2 * static_cast<int>(std::lround(std::tan(cam.fov_y / 2.0) * b.vox_depth)) + 1;
  return b;
}

void validate_ray(const Ray& ray) {
  if (!ray.start.allFinite() || !ray.dir.allFinite() || !std::isfinite(ray.max_dist)) {
    throw std::invalid_argument("Ray: non-finite field");
  }
  if (ray.dir.isZero(0.0)) {
    throw std::invalid_argument("Ray: direction must be non-zero");
  }
  if (!(ray.max_dist > 0.0)) {
    throw std::invalid_argument("Ray: max_dist must be positive");
  }
}

std::vector<Ray> generate_rays(const RayBundle& bundle, const RigidTransform& t_vc,
                               double vox_size) {
  if (bundle.vox_depth < 1 || bundle.vox_width < 1 || bundle.vox_height < 1 ||
      bundle.vox_width % 2 == 0 || bundle.vox_height % 2 == 0) {
    throw std::invalid_argument("generate_rays: bundle dimensions must be positive and odd");
  }
  if (!(vox_size > 0.0)) {
    throw std::invalid_argument("generate_rays: vox_size must be positive");
  }
  const int half_w = (bundle.vox_width - 1) / 2;
  const int half_h = (bundle.vox_height - 1) / 2;
  std::vector<Ray> rays;
  rays.reserve(bundle.ray_count());
  for (int yi = -half_h; yi <= half_h; ++yi) {
    for (int xi = -half_w; xi <= half_w; ++xi) {
      Ray r;
      r.start = t_vc.translation;
      r.dir = t_vc.rotation *
              Eigen::Vector3d(xi * vox_size, yi * vox_size, bundle.vox_depth * vox_size);
      r.max_dist = vox_size * std::sqrt(static_cast<double>(xi) * xi +
                                        static_cast<double>(yi) * yi +
                                        static_cast<double>(bundle.vox_depth) * bundle.vox_depth);
      rays.push_back(r);
    }
  }
  return rays;
}

TraceStats traverse_ray(VoxelGrid& ms_grid, const Ray& ray) {
  validate_ray(ray);
  const GridSpec& spec = ms_grid.spec();
  std::uint8_t* const raw = ms_grid.raw();
  const auto occupied = static_cast<std::uint8_t>(VoxelState::Occupied);
  const auto free_v = static_cast<std::uint8_t>(VoxelState::Free);
  const auto traced = static_cast<std::uint8_t>(VoxelState::UnknownTraced);

  TraceStats stats;
  stats.rays_traced = 1;
  std::uint8_t vox_val = free_v;
  bool entered = false;
  walk_ray(ray, spec.vox_size, [&](const VoxelCoord& c) {
    if (!spec.in_bounds(c)) {
      if (entered) return false;  // a line leaves a convex grid exactly once
      ++stats.voxels_skipped_out_of_bounds;
      return true;
    }
    entered = true;
    std::atomic_ref<std::uint8_t> cell(raw[linear_index_unchecked(c, spec)]);
    if (cell.load(std::memory_order_relaxed) == occupied) {
      vox_val = traced;
    } else {
      cell.store(vox_val, std::memory_order_relaxed);
      if (vox_val == free_v) {
        ++stats.voxels_freed;
      } else {
        ++stats.voxels_marked_unknown_traced;
      }
    }
    return true;
  });
  return stats;
}

TraceStats trace_bundle(VoxelGrid& ms_grid, const RayBundle& bundle,
                        const RigidTransform& t_vc, double vox_size, ExecutionMode mode) {
  const std::vector<Ray> rays = generate_rays(bundle, t_vc, vox_size);
  TraceStats total;
  if (mode == ExecutionMode::Sequential) {
    for (const Ray& ray : rays) total += traverse_ray(ms_grid, ray);
    return total;
  }
  const auto n = static_cast<std::int64_t>(rays.size());
#pragma omp parallel
  {
    TraceStats local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      local += traverse_ray(ms_grid, rays[static_cast<std::size_t>(i)]);
    }
#pragma omp critical
    total += local;
  }
  return total;
}

TraceStats bresenham_trace_image(VoxelGrid& ms_grid, const PointCloud& cloud,
                                 const RigidTransform& t_vc, ExecutionMode mode) {
  const GridSpec& spec = ms_grid.spec();
  std::uint8_t* const raw = ms_grid.raw();
  const auto occupied = static_cast<std::uint8_t>(VoxelState::Occupied);
  const auto free_v = static_cast<std::uint8_t>(VoxelState::Free);
  const VoxelCoord cam_voxel = world_to_voxel(t_vc.translation, spec);
  const auto n = static_cast<std::int64_t>(cloud.size());

  auto trace_point = [&](std::int64_t i, TraceStats& stats) {
    const VoxelCoord end = world_to_voxel(t_vc.apply(cloud.point(static_cast<std::size_t>(i))), spec);
    stats.rays_traced += 1;
    bresenham_line(cam_voxel, end, [&](const VoxelCoord& c) {
      if (c == end) return true;  // the endpoint holds the obstacle
      if (!spec.in_bounds(c)) {
        ++stats.voxels_skipped_out_of_bounds;
        return true;
      }
      std::atomic_ref<std::uint8_t> cell(raw[linear_index_unchecked(c, spec)]);
      if (cell.load(std::memory_order_relaxed) != occupied) {
        cell.store(free_v, std::memory_order_relaxed);
        ++stats.voxels_freed;
      }
      return true;
    });
  };

  TraceStats total;
  if (mode == ExecutionMode::Sequential) {
    for (std::int64_t i = 0; i < n; ++i) trace_point(i, total);
    return total;
  }
#pragma omp parallel
  {
    TraceStats local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) trace_point(i, local);
#pragma omp critical
    total += local;
  }
  return total;
}

}  // namespace voxmap
