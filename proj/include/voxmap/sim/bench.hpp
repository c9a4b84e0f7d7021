#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "voxmap/config.hpp"
#include "voxmap/sim/scene.hpp"

namespace voxmap::sim {

struct TimingStats {
  double min_us = 0.0;
  double p25_us = 0.0;
  double median_us = 0.0;
  double p75_us = 0.0;
  double max_us = 0.0;
  int iterations = 0;
};

/// Percentiles via linear interpolation over the sorted samples. Throws
/// std::invalid_argument on an empty sample set.
TimingStats summarize(std::vector<double> samples_us);

/// Runs fn `warmup` untimed iterations, then `iterations` timed ones on the
/// monotonic clock.
TimingStats measure(const std::function<void()>& fn, int iterations = 50, int warmup = 5);

/// Least-squares slope of log(y) against log(x). Pairs with a non-positive
/// component are skipped; fewer than two usable pairs throw.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct BenchmarkRow {
  std::string sweep;
  double param = 0.0;
  std::string step;
  TimingStats stats;
  std::uint64_t count = 0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;

  /// (param, median_us) pairs for the rows matching step, sorted by param.
  std::vector<std::pair<double, double>> series(const std::string& step) const;

  /// Columns: sweep,param,step,iters,min_us,p25_us,median_us,p75_us,max_us,count
  void write_csv(std::ostream& out) const;
  void write_csv(const std::string& path) const;
};

std::vector<std::size_t> default_point_counts();
std::vector<double> default_ray_fov_scales();
std::vector<std::size_t> default_voxel_counts();

/// Times populate_occupied on the configured grid for seeded uniform clouds
/// of each size. Step name "populate"; count is the resulting Occupied total.
BenchmarkReport sweep_points_benchmark(const AppConfig& cfg,
                                       const std::vector<std::size_t>& counts,
                                       std::uint64_t seed);

/// Times trace_bundle on an empty cubic grid large enough to hold the whole
/// bundle, varying the ray count by scaling both FOVs. Step name "trace";
/// param is the ray count.
BenchmarkReport sweep_rays_benchmark(const AppConfig& cfg,
                                     const std::vector<double>& fov_scales);

/// Times merge_grids across grid sizes with seeded mixed-state contents.
/// Step name "merge"; param is the cell count.
BenchmarkReport sweep_voxels_benchmark(const AppConfig& cfg,
                                       const std::vector<std::size_t>& target_cells,
                                       std::uint64_t seed);

struct CompareStats {
  std::uint64_t frames = 0;
  bool occupied_sets_equal = true;
  std::uint64_t bundled_free = 0;
  std::uint64_t per_pixel_free = 0;
  double state_agreement = 0.0;  // fraction of cells with equal final state
  double bundled_trace_median_us = 0.0;
  double per_pixel_trace_median_us = 0.0;
};

struct CompareResult {
  BenchmarkReport report;
  CompareStats stats;
};

/// Feeds the same rendered frames to a bundled and a per-pixel pipeline.
/// Rows ("compare", frame index, "<tracer>_<step>") carry single-shot times;
/// the stats summarize timing medians and final-grid agreement.
CompareResult compare_methods(const AppConfig& cfg, const Scene& scene,
                              const std::vector<RigidTransform>& trajectory);

}  // namespace voxmap::sim
