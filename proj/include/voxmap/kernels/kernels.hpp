#pragma once

#include <cstddef>
#include <cstdint>

namespace voxmap::kernels {

/// Cell-wise grid merge over raw state bytes. For each i:
///   measurement 0 keeps local[i], measurement 3 writes 0, anything else is
///   copied through.
using MergeFn = void (*)(std::uint8_t* local, const std::uint8_t* measurement, std::size_t n);

/// Batched point transform and voxelization:
///   out[a][i] = floor((R * p_i + t)[a] / vox_size), clamped to +/- 1e9.
/// rotation is row-major 3x3, translation has 3 entries. Every
/// implementation evaluates the same operation tree so results are
/// bit-identical across ISAs.
using TransformVoxelizeFn = void (*)(const double* xs, const double* ys, const double* zs,
                                     std::size_t n, const double* rotation,
                                     const double* translation, double vox_size,
                                     std::int32_t* cx, std::int32_t* cy, std::int32_t* cz);

struct KernelTable {
  MergeFn merge = nullptr;
  TransformVoxelizeFn transform_voxelize = nullptr;
  const char* isa = "scalar";
};

/// Scalar reference implementations.
const KernelTable& scalar_table();

/// Best implementations for the running CPU, falling back to scalar.
const KernelTable& dispatch();

}  // namespace voxmap::kernels
