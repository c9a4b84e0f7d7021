#pragma once

#include <iosfwd>
#include <string>

#include "voxmap/grid.hpp"

namespace voxmap {

/// Grid dump: "VOXGRID1" magic, dims / vox_size / origin as decimal text,
/// then one state byte per cell in linear index order. Throws
/// std::runtime_error on I/O or format errors.
void write_grid(const VoxelGrid& grid, std::ostream& out);
void write_grid(const VoxelGrid& grid, const std::string& path);

VoxelGrid read_grid(std::istream& in);
VoxelGrid read_grid(const std::string& path);

}  // namespace voxmap
