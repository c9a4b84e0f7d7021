#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "voxmap/config.hpp"
#include "voxmap/grid_io.hpp"
#include "voxmap/sensor_io.hpp"
#include "voxmap/sim/bench.hpp"
#include "voxmap/sim/render.hpp"
#include "voxmap/sim/trajectory.hpp"

namespace {

using namespace voxmap;

struct CommonOpts {
  std::string config_path;
  std::string scene = "wall";
  int frames = 10;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::optional<std::string> mode;
  std::optional<std::string> tracer;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool wants_scene) {
  cmd->add_option("--config", o.config_path, "Configuration file (key=value lines)");
  if (wants_scene) {
    cmd->add_option("--scene", o.scene, "Scene name (empty, wall, boxes) or scene file path");
    cmd->add_option("--frames", o.frames, "Number of trajectory frames")
        ->check(CLI::PositiveNumber);
  }
  cmd->add_option("--seed", o.seed, "Deterministic seed (overrides the config)");
  cmd->add_option("--out", o.out_path, "CSV output path (default: stdout)");
  cmd->add_option("--mode", o.mode, "Execution mode: sequential | parallel");
  cmd->add_option("--tracer", o.tracer, "Tracer: bundled | per-pixel");
}

AppConfig resolve_config(const CommonOpts& o) {
  AppConfig cfg = o.config_path.empty() ? AppConfig{} : load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.mode) cfg.parallelism = parse_execution_mode(*o.mode);
  if (o.tracer) cfg.tracer_mode = parse_tracer_mode(*o.tracer);
  return cfg;
}

void emit_report(const sim::BenchmarkReport& report, const std::string& out_path) {
  if (out_path.empty()) {
    report.write_csv(std::cout);
  } else {
    report.write_csv(out_path);
    std::cout << "wrote " << report.rows.size() << " rows to " << out_path << '\n';
  }
}

std::vector<RigidTransform> scene_trajectory(int frames) {
  return sim::sweep_trajectory({-1.0, 0.0, 0.0}, {0.5, 0.0, 0.0}, frames);
}

int cmd_bench_points(const CommonOpts& o) {
  const AppConfig cfg = resolve_config(o);
  emit_report(sim::sweep_points_benchmark(cfg, sim::default_point_counts(), cfg.seed),
              o.out_path);
  return 0;
}

int cmd_bench_rays(const CommonOpts& o) {
  const AppConfig cfg = resolve_config(o);
  emit_report(sim::sweep_rays_benchmark(cfg, sim::default_ray_fov_scales()), o.out_path);
  return 0;
}

int cmd_bench_voxels(const CommonOpts& o) {
  const AppConfig cfg = resolve_config(o);
  emit_report(sim::sweep_voxels_benchmark(cfg, sim::default_voxel_counts(), cfg.seed),
              o.out_path);
  return 0;
}

int cmd_compare(const CommonOpts& o) {
  const AppConfig cfg = resolve_config(o);
  const sim::Scene scene = sim::load_scene(o.scene, cfg.seed);
  const sim::CompareResult result =
      sim::compare_methods(cfg, scene, scene_trajectory(o.frames));
  const sim::CompareStats& s = result.stats;
  std::cout << "frames: " << s.frames << '\n'
            << "occupied sets equal: " << (s.occupied_sets_equal ? "yes" : "no") << '\n'
            << "free voxels (bundled / per-pixel): " << s.bundled_free << " / "
            << s.per_pixel_free << '\n'
            << "state agreement: " << s.state_agreement << '\n'
            << "median trace time (bundled / per-pixel): " << s.bundled_trace_median_us
            << " us / " << s.per_pixel_trace_median_us << " us\n";
  emit_report(result.report, o.out_path);
  return 0;
}

int cmd_run(const CommonOpts& o, const std::string& cloud_path, const std::string& depth_path,
            const std::string& dump_path) {
  const AppConfig cfg = resolve_config(o);
  const CameraModel cam = camera_from_config(cfg);

  std::vector<MeasurementFrame> frames;
  if (!cloud_path.empty() || !depth_path.empty()) {
    MeasurementFrame frame;
    frame.cloud = cloud_path.empty()
                      ? depth_to_cloud(load_depth_image(depth_path), cam, cfg.parallelism)
                      : load_point_cloud(cloud_path);
    frame.t_wc = sim::look_along_x(Eigen::Vector3d::Zero());
    frames.push_back(std::move(frame));
  } else {
    const sim::Scene scene = sim::load_scene(o.scene, cfg.seed);
    const auto trajectory = scene_trajectory(o.frames);
    for (std::size_t f = 0; f < trajectory.size(); ++f) {
      MeasurementFrame frame;
      frame.cloud = depth_to_cloud(sim::render_depth(scene, trajectory[f], cam, cfg.parallelism),
                                   cam, cfg.parallelism);
      frame.t_wc = trajectory[f];
      frame.timestamp = static_cast<double>(f);
      frames.push_back(std::move(frame));
    }
  }

  MappingPipeline pipeline(pipeline_from_config(cfg), frames.front().t_wc.translation);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    const PipelineStats st = pipeline.integrate(frames[f]);
    std::cout << "frame " << f << ": points=" << st.populate.points_total
              << " rays=" << st.trace.rays_traced << " occupied=" << st.occupied_count
              << " free=" << st.freed_count << " populate_us=" << st.populate_us
              << " trace_us=" << st.trace_us << " merge_us=" << st.merge_us
              << " shift_us=" << st.shift_us << (st.shifted ? " shifted" : "") << '\n';
  }
  if (!dump_path.empty()) {
    write_grid(pipeline.local_grid(), dump_path);
    std::cout << "wrote grid to " << dump_path << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voxel grid mapping pipeline: benchmarks, method comparison and frame runs"};
  app.require_subcommand(1);

  CommonOpts points_opts, rays_opts, voxels_opts, compare_opts, run_opts;
  std::string cloud_path, depth_path, dump_path;

  CLI::App* bench_points =
      app.add_subcommand("bench-points", "Time the populate step across point counts");
  add_common(bench_points, points_opts, false);

  CLI::App* bench_rays =
      app.add_subcommand("bench-rays", "Time the trace step across ray counts");
  add_common(bench_rays, rays_opts, false);

  CLI::App* bench_voxels =
      app.add_subcommand("bench-voxels", "Time the merge step across grid sizes");
  add_common(bench_voxels, voxels_opts, false);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run bundled and per-pixel tracers on the same frames and compare");
  add_common(compare, compare_opts, true);

  CLI::App* run = app.add_subcommand("run", "Integrate frames and optionally dump the grid");
  add_common(run, run_opts, true);
  run->add_option("--cloud", cloud_path, "Integrate a single point cloud file (x y z lines)");
  run->add_option("--depth", depth_path, "Integrate a single depth image (.pgm or .f32)");
  run->add_option("--dump-grid", dump_path, "Write the final local grid to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench_points->parsed()) return cmd_bench_points(points_opts);
    if (bench_rays->parsed()) return cmd_bench_rays(rays_opts);
    if (bench_voxels->parsed()) return cmd_bench_voxels(voxels_opts);
    if (compare->parsed()) return cmd_compare(compare_opts);
    if (run->parsed()) return cmd_run(run_opts, cloud_path, depth_path, dump_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
