#include "voxmap/sim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "voxmap/sim/render.hpp"
#include "voxmap/sim/trajectory.hpp"

namespace voxmap::sim {

namespace {

using Clock = std::chrono::steady_clock;

double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

TimingStats single_shot(double us) { return {us, us, us, us, us, 1}; }

}  // namespace

TimingStats summarize(std::vector<double> samples_us) {
  if (samples_us.empty()) throw std::invalid_argument("summarize: no samples");
  std::sort(samples_us.begin(), samples_us.end());
  TimingStats s;
  s.min_us = samples_us.front();
  s.p25_us = percentile(samples_us, 0.25);
  s.median_us = percentile(samples_us, 0.50);
  s.p75_us = percentile(samples_us, 0.75);
  s.max_us = samples_us.back();
  s.iterations = static_cast<int>(samples_us.size());
  return s;
}

TimingStats measure(const std::function<void()>& fn, int iterations, int warmup) {
  if (iterations < 1) throw std::invalid_argument("measure: iterations must be >= 1");
  for (int i = 0; i < warmup; ++i) fn();
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(iterations));
  for (int i = 0; i < iterations; ++i) {
    const auto t0 = Clock::now();
    fn();
    samples.push_back(std::chrono::duration<double, std::micro>(Clock::now() - t0).count());
  }
  return summarize(std::move(samples));
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("loglog_slope: need at least two positive pairs");
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate x values");
  return (n * sxy - sx * sy) / denom;
}

std::vector<std::pair<double, double>> BenchmarkReport::series(const std::string& step) const {
  std::vector<std::pair<double, double>> out;
  for (const BenchmarkRow& row : rows) {
    if (row.step == step) out.emplace_back(row.param, row.stats.median_us);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void BenchmarkReport::write_csv(std::ostream& out) const {
  out << "sweep,param,step,iters,min_us,p25_us,median_us,p75_us,max_us,count\n";
  for (const BenchmarkRow& row : rows) {
    out << row.sweep << ',' << row.param << ',' << row.step << ',' << row.stats.iterations
        << ',' << row.stats.min_us << ',' << row.stats.p25_us << ',' << row.stats.median_us
        << ',' << row.stats.p75_us << ',' << row.stats.max_us << ',' << row.count << '\n';
  }
}

void BenchmarkReport::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  write_csv(out);
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

std::vector<std::size_t> default_point_counts() {
  return {1000, 3000, 10000, 30000, 100000, 300000};
}

std::vector<double> default_ray_fov_scales() {
  return {0.15, 0.22, 0.32, 0.47, 0.68, 0.85, 1.0};
}

std::vector<std::size_t> default_voxel_counts() {
  return {24000, 48000, 96000, 200000, 400000, 675000};
}

BenchmarkReport sweep_points_benchmark(const AppConfig& cfg,
                                       const std::vector<std::size_t>& counts,
                                       std::uint64_t seed) {
  const GridSpec spec = grid_from_config(cfg);
  IntegratorConfig icfg{cfg.vox_inf};
  BenchmarkReport report;
  for (const std::size_t n : counts) {
    std::mt19937_64 rng(seed + n);
    std::uniform_real_distribution<double> ux(0.01, spec.grid_size_x - 0.01);
    std::uniform_real_distribution<double> uy(0.01, spec.grid_size_y - 0.01);
    std::uniform_real_distribution<double> uz(0.01, spec.grid_size_z - 0.01);
    PointCloud cloud;
    cloud.reserve(n);
    // Points are generated directly in the grid frame; the transform is
    // identity so only the scatter cost is measured.
    for (std::size_t i = 0; i < n; ++i) cloud.add(ux(rng), uy(rng), uz(rng));

    VoxelGrid grid(spec);
    const RigidTransform identity;
    populate_occupied(grid, cloud, identity, icfg, cfg.parallelism);
    const std::uint64_t occupied = grid.count(VoxelState::Occupied);

    BenchmarkRow row;
    row.sweep = "points";
    row.param = static_cast<double>(n);
    row.step = "populate";
    row.stats = measure(
        [&] { populate_occupied(grid, cloud, identity, icfg, cfg.parallelism); });
    row.count = occupied;
    report.rows.push_back(row);
  }
  return report;
}

BenchmarkReport sweep_rays_benchmark(const AppConfig& cfg,
                                     const std::vector<double>& fov_scales) {
  BenchmarkReport report;
  for (const double scale : fov_scales) {
    if (!(scale > 0.0) || !(scale <= 1.0)) {
      throw std::invalid_argument("sweep_rays_benchmark: fov scales must lie in (0, 1]");
    }
    AppConfig scaled = cfg;
    scaled.fov_x_deg = cfg.fov_x_deg * scale;
    scaled.fov_y_deg = cfg.fov_y_deg * scale;
    const CameraModel cam = camera_from_config(scaled);
    const RayBundle bundle = bundle_dimensions(cam, scaled.depth, scaled.vox_size);

    // A cubic grid sized to the longest corner ray keeps every ray fully
    // inside, so the measured cost tracks the ray count alone.
    const int half_w = (bundle.vox_width - 1) / 2;
    const int half_h = (bundle.vox_height - 1) / 2;
    const double corner = scaled.vox_size * std::sqrt(static_cast<double>(half_w) * half_w +
                                                      static_cast<double>(half_h) * half_h +
                                                      static_cast<double>(bundle.vox_depth) *
                                                          bundle.vox_depth);
    const double side = 2.0 * corner + 4.0 * scaled.vox_size;
    const GridSpec spec = GridSpec::create_centered(side, side, side, scaled.vox_size,
                                                    Eigen::Vector3d::Zero());
    VoxelGrid grid(spec);
    const RigidTransform t_vc =
        camera_to_grid_transform(look_along_x(Eigen::Vector3d::Zero()), spec.origin);

    BenchmarkRow row;
    row.sweep = "rays";
    row.param = static_cast<double>(bundle.ray_count());
    row.step = "trace";
    row.stats = measure(
        [&] { trace_bundle(grid, bundle, t_vc, scaled.vox_size, cfg.parallelism); });
    row.count = bundle.ray_count();
    report.rows.push_back(row);
  }
  return report;
}

BenchmarkReport sweep_voxels_benchmark(const AppConfig& cfg,
                                       const std::vector<std::size_t>& target_cells,
                                       std::uint64_t seed) {
  BenchmarkReport report;
  const GridSpec base = grid_from_config(cfg);
  for (const std::size_t target : target_cells) {
    if (target == 0) throw std::invalid_argument("sweep_voxels_benchmark: zero target");
    const int dims_z = base.dims_z;
    const int dims_xy = std::max(
        1, static_cast<int>(std::lround(std::sqrt(static_cast<double>(target) / dims_z))));
    const GridSpec spec =
        GridSpec::create(dims_xy * cfg.vox_size, dims_xy * cfg.vox_size,
                         dims_z * cfg.vox_size, cfg.vox_size);

    VoxelGrid loc(spec);
    VoxelGrid ms(spec);
    std::mt19937_64 rng(seed + target);
    std::uniform_int_distribution<int> state(0, 3);
    std::uint64_t non_unknown = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      const auto v = static_cast<std::uint8_t>(state(rng));
      ms.raw()[i] = v;
      if (v != 0) ++non_unknown;
      loc.raw()[i] = static_cast<std::uint8_t>(state(rng));
    }

    BenchmarkRow row;
    row.sweep = "voxels";
    row.param = static_cast<double>(spec.cell_count());
    row.step = "merge";
    row.stats = measure([&] { merge_grids(loc, ms, cfg.parallelism); });
    row.count = non_unknown;
    report.rows.push_back(row);
  }
  return report;
}

CompareResult compare_methods(const AppConfig& cfg, const Scene& scene,
                              const std::vector<RigidTransform>& trajectory) {
  if (trajectory.empty()) throw std::invalid_argument("compare_methods: empty trajectory");
  const CameraModel cam = camera_from_config(cfg);

  AppConfig bundled_cfg = cfg;
  bundled_cfg.tracer_mode = TracerMode::Bundled;
  AppConfig per_pixel_cfg = cfg;
  per_pixel_cfg.tracer_mode = TracerMode::PerPixelBaseline;

  const Eigen::Vector3d start = trajectory.front().translation;
  MappingPipeline bundled(pipeline_from_config(bundled_cfg, start));
  MappingPipeline per_pixel(pipeline_from_config(per_pixel_cfg, start));

  CompareResult result;
  std::vector<double> bundled_trace, per_pixel_trace;
  for (std::size_t f = 0; f < trajectory.size(); ++f) {
    const DepthImage depth = render_depth(scene, trajectory[f], cam, cfg.parallelism);
    MeasurementFrame frame;
    frame.cloud = depth_to_cloud(depth, cam, cfg.parallelism);
    frame.t_wc = trajectory[f];
    frame.timestamp = static_cast<double>(f);

    const PipelineStats sb = bundled.integrate(frame);
    const PipelineStats sp = per_pixel.integrate(frame);
    bundled_trace.push_back(sb.trace_us);
    per_pixel_trace.push_back(sp.trace_us);

    const auto frame_param = static_cast<double>(f);
    result.report.rows.push_back(
        {"compare", frame_param, "bundled_populate", single_shot(sb.populate_us),
         sb.populate.points_total});
    result.report.rows.push_back({"compare", frame_param, "bundled_trace",
                                  single_shot(sb.trace_us), sb.trace.rays_traced});
    result.report.rows.push_back({"compare", frame_param, "bundled_merge",
                                  single_shot(sb.merge_us), sb.occupied_count});
    result.report.rows.push_back(
        {"compare", frame_param, "per_pixel_populate", single_shot(sp.populate_us),
         sp.populate.points_total});
    result.report.rows.push_back({"compare", frame_param, "per_pixel_trace",
                                  single_shot(sp.trace_us), sp.trace.rays_traced});
    result.report.rows.push_back({"compare", frame_param, "per_pixel_merge",
                                  single_shot(sp.merge_us), sp.occupied_count});
  }

  const VoxelGrid& gb = bundled.local_grid();
  const VoxelGrid& gp = per_pixel.local_grid();
  CompareStats& stats = result.stats;
  stats.frames = trajectory.size();
  std::uint64_t agree = 0;
  for (std::size_t i = 0; i < gb.size(); ++i) {
    const auto sb = gb.raw()[i];
    const auto sp = gp.raw()[i];
    const auto occupied = static_cast<std::uint8_t>(VoxelState::Occupied);
    if ((sb == occupied) != (sp == occupied)) stats.occupied_sets_equal = false;
    if (sb == sp) ++agree;
  }
  stats.bundled_free = gb.count(VoxelState::Free);
  stats.per_pixel_free = gp.count(VoxelState::Free);
  stats.state_agreement = gb.size() == 0 ? 1.0
                                         : static_cast<double>(agree) /
                                               static_cast<double>(gb.size());
  stats.bundled_trace_median_us = summarize(bundled_trace).median_us;
  stats.per_pixel_trace_median_us = summarize(per_pixel_trace).median_us;
  return result;
}

}  // namespace voxmap::sim
