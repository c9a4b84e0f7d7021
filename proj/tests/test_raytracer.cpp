#include <Eigen/Geometry>
#include <random>
#include <vector>

#include "doctest.h"
#include "support/oracles.hpp"
#include "voxmap/raytracer.hpp"
#include "voxmap/sim/trajectory.hpp"

using namespace voxmap;

namespace {

constexpr double kDeg = M_PI / 180.0;

CameraModel standard_camera() {
  return CameraModel{85.0 * kDeg, 101.0 * kDeg, 320, 240, 6.5};
}

VoxelGrid make_grid(int nx, int ny, int nz, double vox = 0.15) {
  return VoxelGrid(GridSpec::create(nx * vox, ny * vox, nz * vox, vox));
}

std::vector<VoxelCoord> walk_all(const Ray& ray, double vox) {
  std::vector<VoxelCoord> out;
  walk_ray(ray, vox, [&](const VoxelCoord& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("bundle dimensions for the standard configuration") {
  const RayBundle b = bundle_dimensions(standard_camera(), 6.5, 0.15);
  CHECK(b.vox_depth == 43);
  CHECK(b.vox_width == 79);
  CHECK(b.vox_height == 105);
  CHECK(b.ray_count() == 8295);
  CHECK(b.ray_count() >= 8000);
  CHECK(b.ray_count() <= 9000);
  CHECK(b.vox_width % 2 == 1);
  CHECK(b.vox_height % 2 == 1);
}

TEST_CASE("bundle rays stay far below the pixel count") {
  const CameraModel cam = standard_camera();
  const RayBundle b = bundle_dimensions(cam, 6.5, 0.15);
  const std::size_t pixels = static_cast<std::size_t>(cam.width) * cam.height;
  CHECK(b.ray_count() * 8 <= pixels);
}

TEST_CASE("bundle plane is square for equal fields of view") {
  const CameraModel cam{70.0 * kDeg, 70.0 * kDeg, 100, 100, 5.0};
  const RayBundle b = bundle_dimensions(cam, 5.0, 0.1);
  CHECK(b.vox_width == b.vox_height);
}

TEST_CASE("bundle depth never collapses below one voxel") {
  const CameraModel cam{1.0 * kDeg, 1.0 * kDeg, 10, 10, 5.0};
  const RayBundle b = bundle_dimensions(cam, 0.01, 0.15);
  CHECK(b.vox_depth == 1);
  CHECK(b.vox_width == 1);
  CHECK(b.vox_height == 1);
  CHECK(b.ray_count() == 1);
}

TEST_CASE("bundle dimension validation") {
  const CameraModel cam = standard_camera();
  CHECK_THROWS_AS(bundle_dimensions(cam, 0.0, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(bundle_dimensions(cam, -1.0, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(bundle_dimensions(cam, 6.5, 0.0), std::invalid_argument);
  CameraModel bad = cam;
  bad.fov_x = 0.0;
  CHECK_THROWS_AS(bundle_dimensions(bad, 6.5, 0.15), std::invalid_argument);
}

TEST_CASE("ray generation covers the end plane in row-major order") {
  const RayBundle b{4, 5, 3};
  const double vox = 0.1;
  const std::vector<Ray> rays = generate_rays(b, RigidTransform::identity(), vox);
  REQUIRE(rays.size() == 15);

  // First target is (-2, -1, 4), last is (2, 1, 4), x varies fastest.
  CHECK(rays.front().dir.isApprox(Eigen::Vector3d(-0.2, -0.1, 0.4)));
  CHECK(rays.back().dir.isApprox(Eigen::Vector3d(0.2, 0.1, 0.4)));
  CHECK(rays[1].dir.isApprox(Eigen::Vector3d(-0.1, -0.1, 0.4)));

  // Center ray runs straight down the optical axis for vox_depth voxels.
  const Ray& center = rays[7];
  CHECK(center.dir.isApprox(Eigen::Vector3d(0.0, 0.0, 0.4)));
  CHECK(center.max_dist == doctest::Approx(0.4));

  // Every ray starts at the camera center and is capped at the target range.
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const int xi = static_cast<int>(i % 5) - 2;
    const int yi = static_cast<int>(i / 5) - 1;
    CHECK(rays[i].start.isZero());
    CHECK(rays[i].max_dist ==
          doctest::Approx(vox * std::sqrt(double(xi * xi + yi * yi + 16))));
    CHECK_NOTHROW(validate_ray(rays[i]));
  }
}

TEST_CASE("ray generation applies the camera-to-grid transform") {
  const RayBundle b{10, 1, 1};
  const Eigen::Vector3d position(1.0, 2.0, 3.0);
  const RigidTransform pose = sim::look_along_x(position);
  const std::vector<Ray> rays = generate_rays(b, pose, 0.15);
  REQUIRE(rays.size() == 1);
  CHECK(rays[0].start.isApprox(position));
  // Optical axis (+z camera) maps to +x, so the center ray points along +x.
  CHECK(rays[0].dir.isApprox(Eigen::Vector3d(1.5, 0.0, 0.0)));
  CHECK(rays[0].max_dist == doctest::Approx(1.5));
}

TEST_CASE("ray validation rejects degenerate rays") {
  CHECK_THROWS_AS(validate_ray(Ray{{0, 0, 0}, {0, 0, 0}, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_ray(Ray{{0, 0, 0}, {1, 0, 0}, 0.0}), std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_ray(Ray{{nan, 0, 0}, {1, 0, 0}, 1.0}), std::invalid_argument);
}

TEST_CASE("grid walk follows an axis ray one voxel at a time") {
  const Ray ray{{0.075, 0.075, 0.075}, {1.0, 0.0, 0.0}, 1.4};
  const std::vector<VoxelCoord> visited = walk_all(ray, 0.15);
  REQUIRE(visited.size() == 10);
  for (int i = 0; i < 10; ++i) CHECK(visited[i] == VoxelCoord{i, 0, 0});
}

TEST_CASE("grid walk changes exactly one axis per step") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int round = 0; round < 40; ++round) {
    Ray ray;
    ray.start = {u(rng) * 2.0, u(rng) * 2.0, u(rng) * 2.0};
    ray.dir = {u(rng), u(rng), u(rng)};
    if (ray.dir.isZero(1e-12)) continue;
    ray.max_dist = 1.0 + std::abs(u(rng)) * 3.0;
    const std::vector<VoxelCoord> visited = walk_all(ray, 0.15);
    REQUIRE(!visited.empty());
    for (std::size_t i = 1; i < visited.size(); ++i) {
      const int dx = std::abs(visited[i].x - visited[i - 1].x);
      const int dy = std::abs(visited[i].y - visited[i - 1].y);
      const int dz = std::abs(visited[i].z - visited[i - 1].z);
      CHECK(dx + dy + dz == 1);
    }
  }
}

TEST_CASE("grid walk breaks boundary ties toward the lower axis") {
  // A corner-started diagonal hits all three boundaries at once; the walk
  // must step x, then y, then z.
  const Ray ray{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, 0.3};
  const std::vector<VoxelCoord> visited = walk_all(ray, 0.15);
  REQUIRE(visited.size() >= 4);
  CHECK(visited[0] == VoxelCoord{0, 0, 0});
  CHECK(visited[1] == VoxelCoord{1, 0, 0});
  CHECK(visited[2] == VoxelCoord{1, 1, 0});
  CHECK(visited[3] == VoxelCoord{1, 1, 1});
}

TEST_CASE("grid walk honors an early-stop visitor") {
  const Ray ray{{0.075, 0.075, 0.075}, {1.0, 0.0, 0.0}, 10.0};
  int visits = 0;
  walk_ray(ray, 0.15, [&](const VoxelCoord&) { return ++visits < 3; });
  CHECK(visits == 3);
}

TEST_CASE("grid walk covers every voxel found by dense sampling") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int round = 0; round < 30; ++round) {
    Ray ray;
    ray.start = {u(rng), u(rng), u(rng)};
    ray.dir = {u(rng), u(rng), u(rng)};
    if (ray.dir.norm() < 1e-6) continue;
    ray.max_dist = 0.5 + std::abs(u(rng)) * 2.0;
    const double vox = 0.15;
    oracles::VoxelSet walked;
    walk_ray(ray, vox, [&](const VoxelCoord& c) {
      walked.insert(oracles::key(c));
      return true;
    });
    for (const oracles::VoxelKey& k : oracles::supersample_ray(ray, vox, 200)) {
      CHECK(walked.count(k) == 1);
    }
  }
}

TEST_CASE("traverse frees every voxel along an unobstructed ray") {
  VoxelGrid grid = make_grid(12, 12, 12);
  const Ray ray{{0.075, 0.825, 0.825}, {1.0, 0.0, 0.0}, 1.4};
  const TraceStats st = traverse_ray(grid, ray);
  CHECK(st.rays_traced == 1);
  CHECK(st.voxels_freed == 10);
  CHECK(st.voxels_marked_unknown_traced == 0);
  CHECK(st.voxels_skipped_out_of_bounds == 0);
  CHECK(grid.count(VoxelState::Free) == 10);
  for (int x = 0; x < 10; ++x) CHECK(grid.at({x, 5, 5}) == VoxelState::Free);
  CHECK(grid.at({10, 5, 5}) == VoxelState::Unknown);
}

TEST_CASE("traverse switches to UnknownTraced behind the first hit") {
  VoxelGrid grid = make_grid(12, 12, 12);
  grid.set({3, 5, 5}, VoxelState::Occupied);
  const Ray ray{{0.075, 0.825, 0.825}, {1.0, 0.0, 0.0}, 1.4};
  const TraceStats st = traverse_ray(grid, ray);
  CHECK(st.voxels_freed == 3);
  CHECK(st.voxels_marked_unknown_traced == 6);
  for (int x = 0; x < 3; ++x) CHECK(grid.at({x, 5, 5}) == VoxelState::Free);
  CHECK(grid.at({3, 5, 5}) == VoxelState::Occupied);
  for (int x = 4; x < 10; ++x) CHECK(grid.at({x, 5, 5}) == VoxelState::UnknownTraced);
}

TEST_CASE("a short ray frees at most its starting voxel") {
  VoxelGrid grid = make_grid(12, 12, 12);
  const Ray ray{{0.825, 0.825, 0.825}, {1.0, 0.0, 0.0}, 0.01};
  const TraceStats st = traverse_ray(grid, ray);
  CHECK(st.voxels_freed == 1);
  CHECK(grid.count(VoxelState::Free) == 1);
  CHECK(grid.at({5, 5, 5}) == VoxelState::Free);
}

TEST_CASE("traverse counts voxels skipped before grid entry") {
  VoxelGrid grid = make_grid(12, 12, 12);
  const Ray ray{{-0.5, 0.825, 0.825}, {1.0, 0.0, 0.0}, 1.0};
  const TraceStats st = traverse_ray(grid, ray);
  CHECK(st.voxels_skipped_out_of_bounds == 4);  // voxels -4..-1 on x
  CHECK(st.voxels_freed > 0);
  CHECK(grid.at({0, 5, 5}) == VoxelState::Free);
}

TEST_CASE("traverse stops once the ray has left the grid") {
  VoxelGrid grid = make_grid(12, 12, 12);
  const Ray ray{{0.825, 0.825, 0.825}, {1.0, 0.0, 0.0}, 50.0};
  const TraceStats st = traverse_ray(grid, ray);
  CHECK(st.voxels_freed == 7);  // x = 5..11
  // Post-exit coordinates end the walk instead of accumulating skips.
  CHECK(st.voxels_skipped_out_of_bounds == 0);
}

TEST_CASE("bundle trace of an empty grid never marks UnknownTraced") {
  VoxelGrid grid = make_grid(24, 24, 24);
  const RigidTransform pose = sim::look_along_x(grid.spec().center());
  const RayBundle bundle{8, 9, 9};
  const TraceStats st = trace_bundle(grid, bundle, pose, grid.spec().vox_size);
  CHECK(st.rays_traced == 81);
  CHECK(st.voxels_marked_unknown_traced == 0);
  CHECK(st.voxels_freed > 0);
  CHECK(grid.count(VoxelState::UnknownTraced) == 0);
  CHECK(grid.count(VoxelState::Free) > 0);
}

TEST_CASE("bundle trace cannot free cells behind a full wall") {
  VoxelGrid grid = make_grid(24, 24, 24);
  const int wall_x = 16;
  for (int z = 0; z < 24; ++z) {
    for (int y = 0; y < 24; ++y) grid.set({wall_x, y, z}, VoxelState::Occupied);
  }
  const RigidTransform pose =
      sim::look_along_x(Eigen::Vector3d(0.075, 1.8, 1.8));  // voxel (0, 12, 12)
  const RayBundle bundle{20, 21, 21};
  const TraceStats st = trace_bundle(grid, bundle, pose, grid.spec().vox_size);
  CHECK(st.voxels_marked_unknown_traced > 0);
  std::size_t free_behind = 0, traced_behind = 0;
  for (int z = 0; z < 24; ++z) {
    for (int y = 0; y < 24; ++y) {
      for (int x = wall_x + 1; x < 24; ++x) {
        if (grid.at({x, y, z}) == VoxelState::Free) ++free_behind;
        if (grid.at({x, y, z}) == VoxelState::UnknownTraced) ++traced_behind;
      }
    }
  }
  CHECK(free_behind == 0);
  CHECK(traced_behind > 0);
}

TEST_CASE("a one-ray bundle reproduces a single traverse") {
  VoxelGrid a = make_grid(16, 16, 16);
  VoxelGrid b = make_grid(16, 16, 16);
  a.set({9, 8, 8}, VoxelState::Occupied);
  b.set({9, 8, 8}, VoxelState::Occupied);
  const RigidTransform pose = sim::look_along_x(Eigen::Vector3d(0.3, 1.275, 1.275));
  const RayBundle bundle{12, 1, 1};

  const TraceStats bs = trace_bundle(a, bundle, pose, 0.15);
  const std::vector<Ray> rays = generate_rays(bundle, pose, 0.15);
  REQUIRE(rays.size() == 1);
  const TraceStats ts = traverse_ray(b, rays[0]);

  CHECK(a == b);
  CHECK(bs.voxels_freed == ts.voxels_freed);
  CHECK(bs.voxels_marked_unknown_traced == ts.voxels_marked_unknown_traced);
}

TEST_CASE("sequential bundle traces are deterministic") {
  const RigidTransform pose = sim::look_along_x(Eigen::Vector3d(0.2, 1.2, 1.2));
  const RayBundle bundle{14, 15, 15};
  VoxelGrid a = make_grid(16, 16, 16);
  VoxelGrid b = make_grid(16, 16, 16);
  a.set({10, 7, 7}, VoxelState::Occupied);
  b.set({10, 7, 7}, VoxelState::Occupied);
  trace_bundle(a, bundle, pose, 0.15, ExecutionMode::Sequential);
  trace_bundle(b, bundle, pose, 0.15, ExecutionMode::Sequential);
  CHECK(a == b);
}

TEST_CASE("integer line walk runs straight along an axis") {
  std::vector<VoxelCoord> visited;
  bresenham_line({0, 2, 3}, {10, 2, 3}, [&](const VoxelCoord& c) {
    visited.push_back(c);
    return true;
  });
  REQUIRE(visited.size() == 11);
  for (int i = 0; i <= 10; ++i) CHECK(visited[i] == VoxelCoord{i, 2, 3});
}

TEST_CASE("integer line walk visits coincident endpoints once") {
  int visits = 0;
  bresenham_line({4, 4, 4}, {4, 4, 4}, [&](const VoxelCoord&) {
    ++visits;
    return true;
  });
  CHECK(visits == 1);
}

TEST_CASE("integer line walk advances the driving axis every step") {
  std::vector<VoxelCoord> visited;
  bresenham_line({0, 0, 0}, {5, 3, 2}, [&](const VoxelCoord& c) {
    visited.push_back(c);
    return true;
  });
  REQUIRE(visited.size() == 6);  // one voxel per x column
  CHECK(visited.front() == VoxelCoord{0, 0, 0});
  CHECK(visited.back() == VoxelCoord{5, 3, 2});
  for (std::size_t i = 1; i < visited.size(); ++i) {
    CHECK(visited[i].x - visited[i - 1].x == 1);
  }
}

TEST_CASE("integer line walk stays inside the exact traversal corridor") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coord(-12, 12);
  for (int round = 0; round < 200; ++round) {
    const VoxelCoord from{coord(rng), coord(rng), coord(rng)};
    const VoxelCoord to{coord(rng), coord(rng), coord(rng)};
    if (from == to) continue;
    const double vox = 0.15;
    const Eigen::Vector3d a = (Eigen::Vector3d(from.x, from.y, from.z).array() + 0.5) * vox;
    const Eigen::Vector3d b = (Eigen::Vector3d(to.x, to.y, to.z).array() + 0.5) * vox;
    const Ray segment{a, b - a, (b - a).norm()};
    oracles::VoxelSet exact;
    walk_ray(segment, vox, [&](const VoxelCoord& c) {
      exact.insert(oracles::key(c));
      return true;
    });
    bresenham_line(from, to, [&](const VoxelCoord& c) {
      CHECK(exact.count(oracles::key(c)) == 1);
      return true;
    });
  }
}

TEST_CASE("per-pixel clearing frees the path but never the endpoint") {
  VoxelGrid grid = make_grid(12, 12, 12);
  const RigidTransform pose = sim::look_along_x(Eigen::Vector3d(0.375, 0.825, 0.825));
  PointCloud cloud;
  cloud.add(0.0, 0.0, 1.05);  // +x in the grid frame, endpoint voxel (9, 5, 5)
  const TraceStats st = bresenham_trace_image(grid, cloud, pose);
  CHECK(st.rays_traced == 1);
  CHECK(st.voxels_freed == 7);  // x = 2..8
  for (int x = 2; x <= 8; ++x) CHECK(grid.at({x, 5, 5}) == VoxelState::Free);
  CHECK(grid.at({9, 5, 5}) == VoxelState::Unknown);
}

TEST_CASE("per-pixel clearing leaves Occupied cells alone") {
  VoxelGrid grid = make_grid(12, 12, 12);
  grid.set({5, 5, 5}, VoxelState::Occupied);
  grid.set({9, 5, 5}, VoxelState::Occupied);
  const RigidTransform pose = sim::look_along_x(Eigen::Vector3d(0.375, 0.825, 0.825));
  PointCloud cloud;
  cloud.add(0.0, 0.0, 1.05);
  const TraceStats st = bresenham_trace_image(grid, cloud, pose);
  CHECK(grid.at({5, 5, 5}) == VoxelState::Occupied);
  CHECK(grid.at({9, 5, 5}) == VoxelState::Occupied);
  CHECK(st.voxels_freed == 6);  // x = 2..8 minus the occupied cell
}

TEST_CASE("per-pixel clearing counts out-of-grid path cells") {
  VoxelGrid grid = make_grid(12, 12, 12);
  const RigidTransform pose = sim::look_along_x(Eigen::Vector3d(0.375, 0.825, 0.825));
  PointCloud cloud;
  cloud.add(0.0, 0.0, 2.4);  // ends at voxel (18, 5, 5), past the 12-wide grid
  const TraceStats st = bresenham_trace_image(grid, cloud, pose);
  CHECK(st.voxels_freed == 10);                 // x = 2..11
  CHECK(st.voxels_skipped_out_of_bounds == 6);  // x = 12..17
}

TEST_CASE("sequential per-pixel clearing is deterministic") {
  const RigidTransform pose = sim::look_along_x(Eigen::Vector3d(0.3, 0.9, 0.9));
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  PointCloud cloud;
  for (int i = 0; i < 500; ++i) cloud.add(u(rng), u(rng), 0.5 + std::abs(u(rng)));
  VoxelGrid a = make_grid(12, 12, 12);
  VoxelGrid b = make_grid(12, 12, 12);
  a.set({7, 6, 6}, VoxelState::Occupied);
  b.set({7, 6, 6}, VoxelState::Occupied);
  bresenham_trace_image(a, cloud, pose, ExecutionMode::Sequential);
  bresenham_trace_image(b, cloud, pose, ExecutionMode::Sequential);
  CHECK(a == b);
}
