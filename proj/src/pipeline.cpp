#include "voxmap/pipeline.hpp"

#include <omp.h>

#include <chrono>
#include <stdexcept>

#include "voxmap/kernels/kernels.hpp"

namespace voxmap {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point since) {
  return std::chrono::duration<double, std::micro>(Clock::now() - since).count();
}

PipelineConfig validated(PipelineConfig cfg) {
  cfg.validate();
  return cfg;
}

PipelineConfig recentered(PipelineConfig cfg, const Eigen::Vector3d& position) {
  cfg.grid = GridSpec::create_centered(cfg.grid.grid_size_x, cfg.grid.grid_size_y,
                                       cfg.grid.grid_size_z, cfg.grid.vox_size, position);
  return cfg;
}

}  // namespace

void PipelineConfig::validate() const {
  camera.validate();
  integrator.validate();
  if (grid.cell_count() == 0) {
    throw std::invalid_argument("PipelineConfig: empty grid");
  }
  if (!(depth > 0.0) || depth > camera.max_depth) {
    throw std::invalid_argument("PipelineConfig: depth must lie in (0, camera.max_depth]");
  }
}

void merge_grids(VoxelGrid& loc_grid, const VoxelGrid& ms_grid, ExecutionMode mode) {
  if (!loc_grid.spec().same_layout(ms_grid.spec())) {
    throw std::invalid_argument("merge_grids: grid layouts differ");
  }
  const std::size_t n = loc_grid.size();
  if (mode == ExecutionMode::Sequential) {
    kernels::scalar_table().merge(loc_grid.raw(), ms_grid.raw(), n);
    return;
  }
  const kernels::KernelTable& table = kernels::dispatch();
  const int num_chunks = std::max(1, omp_get_max_threads() * 4);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < num_chunks; ++c) {
    const std::size_t begin = n * static_cast<std::size_t>(c) / num_chunks;
    const std::size_t end = n * (static_cast<std::size_t>(c) + 1) / num_chunks;
    if (end > begin) table.merge(loc_grid.raw() + begin, ms_grid.raw() + begin, end - begin);
  }
}

RigidTransform camera_to_grid_transform(const RigidTransform& t_wc,
                                        const Eigen::Vector3d& grid_origin) {
  return compose(RigidTransform::from_translation(-grid_origin), t_wc);
}

MappingPipeline::MappingPipeline(PipelineConfig cfg)
    : cfg_(validated(std::move(cfg))), local_(cfg_.grid), measurement_(cfg_.grid) {}

MappingPipeline::MappingPipeline(PipelineConfig cfg, const Eigen::Vector3d& initial_position)
    : MappingPipeline(recentered(std::move(cfg), initial_position)) {}

PipelineStats MappingPipeline::integrate(const MeasurementFrame& frame) {
  if (!frame.t_wc.is_valid(1e-6)) {
    throw std::invalid_argument("MeasurementFrame: invalid transform");
  }
  PipelineStats stats;
  const ExecutionMode mode = cfg_.parallelism;
  const double vox = local_.spec().vox_size;

  auto t0 = Clock::now();
  measurement_.reset();
  measurement_.set_origin(local_.spec().origin);
  const RigidTransform t_vc = camera_to_grid_transform(frame.t_wc, local_.spec().origin);
  stats.populate = populate_occupied(measurement_, frame.cloud, t_vc, cfg_.integrator, mode);
  stats.populate_us = elapsed_us(t0);

  t0 = Clock::now();
  if (cfg_.tracer_mode == TracerMode::Bundled) {
    const RayBundle bundle = bundle_dimensions(cfg_.camera, cfg_.depth, vox);
    stats.trace = trace_bundle(measurement_, bundle, t_vc, vox, mode);
  } else {
    stats.trace = bresenham_trace_image(measurement_, frame.cloud, t_vc, mode);
  }
  stats.trace_us = elapsed_us(t0);

  t0 = Clock::now();
  merge_grids(local_, measurement_, mode);
  stats.merge_us = elapsed_us(t0);

  t0 = Clock::now();
  const Eigen::Vector3d drift = frame.t_wc.translation - local_.spec().center();
  if ((drift.cwiseAbs().array() >= vox).any()) {
    const Eigen::Vector3i offset = shift_offset_for_center(local_.spec(), frame.t_wc.translation);
    if (offset != Eigen::Vector3i::Zero()) {
      local_ = shift_grid_by(local_, offset);
      stats.shifted = true;
      stats.shift_offset = offset;
    }
  }
  stats.shift_us = elapsed_us(t0);

  stats.occupied_count = local_.count(VoxelState::Occupied);
  stats.freed_count = local_.count(VoxelState::Free);
  return stats;
}

}  // namespace voxmap
