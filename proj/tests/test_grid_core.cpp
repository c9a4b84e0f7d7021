#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "voxmap/grid.hpp"

using namespace voxmap;

TEST_CASE("voxel states map to the serialized byte values") {
  CHECK(static_cast<std::uint8_t>(VoxelState::Unknown) == 0);
  CHECK(static_cast<std::uint8_t>(VoxelState::Free) == 1);
  CHECK(static_cast<std::uint8_t>(VoxelState::Occupied) == 2);
  CHECK(static_cast<std::uint8_t>(VoxelState::UnknownTraced) == 3);
}

TEST_CASE("grid spec derives voxel counts from metric extents") {
  const GridSpec spec = GridSpec::create(15.0, 15.0, 3.0, 0.15);
  CHECK(spec.dims_x == 100);
  CHECK(spec.dims_y == 100);
  CHECK(spec.dims_z == 20);
  CHECK(spec.cell_count() == 200000);

  CHECK_THROWS_AS(GridSpec::create(0.0, 1.0, 1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::create(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::create(1.0, 1.0, 1.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec::create(0.01, 1.0, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("centered spec places the origin a quantized half extent below the center") {
  const GridSpec spec =
      GridSpec::create_centered(15.0, 15.0, 3.0, 0.15, Eigen::Vector3d::Zero());
  CHECK(spec.origin.x() == doctest::Approx(-7.5));
  CHECK(spec.origin.y() == doctest::Approx(-7.5));
  CHECK(spec.origin.z() == doctest::Approx(-1.5));
  CHECK((spec.center() - Eigen::Vector3d::Zero()).norm() == doctest::Approx(0.0));

  const GridSpec odd = GridSpec::create_centered(0.45, 0.45, 0.45, 0.15, {1.0, 2.0, 3.0});
  CHECK(odd.dims_x == 3);
  // floor(3/2) = 1 voxel below the center per axis
  CHECK(odd.origin.x() == doctest::Approx(1.0 - 0.15));
}

TEST_CASE("linear index follows idx = x + y*dims_x + z*dims_x*dims_y") {
  const GridSpec spec = GridSpec::create(15.0, 15.0, 3.0, 0.15);
  CHECK(linear_index({0, 0, 0}, spec) == 0);
  CHECK(linear_index({1, 0, 0}, spec) == 1);
  CHECK(linear_index({3, 2, 1}, spec) == 10203);
  CHECK(!linear_index({-1, 0, 0}, spec).has_value());
  CHECK(!linear_index({100, 0, 0}, spec).has_value());
  CHECK(!linear_index({0, 0, 20}, spec).has_value());
}

TEST_CASE("linear index enumerates a small grid bijectively") {
  const GridSpec spec = GridSpec::create(0.4, 0.3, 0.2, 0.1);
  REQUIRE(spec.dims_x == 4);
  REQUIRE(spec.dims_y == 3);
  REQUIRE(spec.dims_z == 2);
  std::size_t expected = 0;
  for (int z = 0; z < spec.dims_z; ++z) {
    for (int y = 0; y < spec.dims_y; ++y) {
      for (int x = 0; x < spec.dims_x; ++x) {
        CHECK(linear_index({x, y, z}, spec) == expected);
        ++expected;
      }
    }
  }
  CHECK(expected == spec.cell_count());
}

TEST_CASE("world_to_voxel floors each component") {
  const GridSpec spec = GridSpec::create(15.0, 15.0, 3.0, 0.15);
  CHECK(world_to_voxel({0.0, 0.0, 0.0}, spec) == VoxelCoord{0, 0, 0});
  CHECK(world_to_voxel({0.16, 0.0, 0.31}, spec) == VoxelCoord{1, 0, 2});

  const VoxelCoord below = world_to_voxel({-0.01, 0.0, 0.0}, spec);
  CHECK(below == VoxelCoord{-1, 0, 0});
  CHECK(!spec.in_bounds(below));

  CHECK_THROWS_AS(
      world_to_voxel({std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0}, spec),
      std::invalid_argument);
}

TEST_CASE("world_to_voxel agrees with a sampled scalar oracle") {
  const GridSpec spec = GridSpec::create(2.0, 2.0, 2.0, 0.15);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const Eigen::Vector3d p(u(rng), u(rng), u(rng));
    const VoxelCoord c = world_to_voxel(p, spec);
    CHECK(c.x == static_cast<int>(std::floor(p.x() / spec.vox_size)));
    CHECK(c.y == static_cast<int>(std::floor(p.y() / spec.vox_size)));
    CHECK(c.z == static_cast<int>(std::floor(p.z() / spec.vox_size)));
  }
}

TEST_CASE("reset turns every state Unknown and is idempotent") {
  VoxelGrid grid(GridSpec::create(0.6, 0.6, 0.6, 0.1));
  grid.set({0, 0, 0}, VoxelState::Occupied);
  grid.set({5, 5, 5}, VoxelState::Free);
  grid.set({2, 3, 4}, VoxelState::UnknownTraced);
  grid.reset();
  CHECK(grid.count(VoxelState::Unknown) == grid.size());
  grid.reset();
  CHECK(grid.count(VoxelState::Unknown) == grid.size());
}

TEST_CASE("shifting by zero is the identity") {
  VoxelGrid grid(GridSpec::create(1.0, 1.0, 1.0, 0.1));
  grid.set({5, 5, 5}, VoxelState::Occupied);
  const VoxelGrid shifted = shift_grid_by(grid, Eigen::Vector3i::Zero());
  CHECK(shifted == grid);
}

TEST_CASE("shifting by a full grid clears everything") {
  VoxelGrid grid(GridSpec::create(1.0, 1.0, 1.0, 0.1));
  for (std::size_t i = 0; i < grid.size(); ++i) grid.raw()[i] = 2;
  const VoxelGrid shifted = shift_grid_by(grid, {grid.spec().dims_x, 0, 0});
  CHECK(shifted.count(VoxelState::Unknown) == shifted.size());
}

TEST_CASE("a unit x shift moves content against the shift direction") {
  VoxelGrid grid(GridSpec::create(1.5, 1.5, 1.5, 0.15));
  grid.set({5, 5, 5}, VoxelState::Occupied);
  const VoxelGrid shifted = shift_grid_by(grid, {1, 0, 0});
  CHECK(shifted.at({4, 5, 5}) == VoxelState::Occupied);
  CHECK(shifted.count(VoxelState::Occupied) == 1);
  CHECK(shifted.spec().origin.x() == doctest::Approx(grid.spec().origin.x() + 0.15));
}

TEST_CASE("shift matches the brute-force copy reference on random grids") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> state(0, 3);
  std::uniform_int_distribution<int> off(-6, 6);
  for (int round = 0; round < 50; ++round) {
    VoxelGrid grid(GridSpec::create(0.8, 0.7, 0.6, 0.1));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid.raw()[i] = static_cast<std::uint8_t>(state(rng));
    }
    const Eigen::Vector3i offset(off(rng), off(rng), off(rng));
    const VoxelGrid shifted = shift_grid_by(grid, offset);
    const VoxelGrid expected = oracles::shift_reference(grid, offset);
    CHECK(shifted == expected);
  }
}

TEST_CASE("shift then unshift restores the doubly-overlapping region") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> state(0, 3);
  VoxelGrid grid(GridSpec::create(1.0, 1.0, 1.0, 0.1));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.raw()[i] = static_cast<std::uint8_t>(state(rng));
  }
  const Eigen::Vector3i d(3, -2, 1);
  const VoxelGrid back = shift_grid_by(shift_grid_by(grid, d), -d);
  const GridSpec& spec = grid.spec();
  for (int z = 0; z < spec.dims_z; ++z) {
    for (int y = 0; y < spec.dims_y; ++y) {
      for (int x = 0; x < spec.dims_x; ++x) {
        const VoxelCoord c{x, y, z};
        const VoxelCoord via{x - d.x(), y - d.y(), z - d.z()};
        if (spec.in_bounds(via)) {
          CHECK(back.at(c) == grid.at(c));
        } else {
          CHECK(back.at(c) == VoxelState::Unknown);
        }
      }
    }
  }
}

TEST_CASE("recentering shift quantizes to whole voxels") {
  VoxelGrid grid(GridSpec::create_centered(1.5, 1.5, 1.5, 0.15, Eigen::Vector3d::Zero()));
  grid.set({5, 5, 5}, VoxelState::Occupied);

  const Eigen::Vector3d new_center(0.40, -0.33, 0.0);
  const Eigen::Vector3i offset = shift_offset_for_center(grid.spec(), new_center);
  const VoxelGrid shifted = shift_grid(grid, new_center);

  const Eigen::Vector3d moved = shifted.spec().origin - grid.spec().origin;
  CHECK(moved.x() == doctest::Approx(offset.x() * 0.15));
  CHECK(moved.y() == doctest::Approx(offset.y() * 0.15));
  CHECK(moved.z() == doctest::Approx(offset.z() * 0.15));
  // The residual between the requested and achieved center is under half a voxel.
  CHECK((shifted.spec().center() - new_center).cwiseAbs().maxCoeff() <= 0.15 / 2 + 1e-12);
}
