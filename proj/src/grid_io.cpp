#include "voxmap/grid_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace voxmap {

namespace {
constexpr const char* kMagic = "VOXGRID1";
}

void write_grid(const VoxelGrid& grid, std::ostream& out) {
  const GridSpec& spec = grid.spec();
  out.precision(std::numeric_limits<double>::max_digits10);
  out << kMagic << '\n'
      << spec.dims_x << ' ' << spec.dims_y << ' ' << spec.dims_z << '\n'
      << spec.vox_size << '\n'
      << spec.origin.x() << ' ' << spec.origin.y() << ' ' << spec.origin.z() << '\n';
  out.write(reinterpret_cast<const char*>(grid.raw()), static_cast<std::streamsize>(grid.size()));
  if (!out) throw std::runtime_error("write_grid: stream write failed");
}

void write_grid(const VoxelGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_grid: cannot open " + path);
  write_grid(grid, out);
}

VoxelGrid read_grid(std::istream& in) {
  std::string magic;
  int dims_x = 0, dims_y = 0, dims_z = 0;
  double vox_size = 0.0;
  Eigen::Vector3d origin;
  in >> magic >> dims_x >> dims_y >> dims_z >> vox_size >> origin.x() >> origin.y() >>
      origin.z();
  if (!in || magic != kMagic) throw std::runtime_error("read_grid: bad header");
  if (dims_x <= 0 || dims_y <= 0 || dims_z <= 0 || !(vox_size > 0.0)) {
    throw std::runtime_error("read_grid: invalid dimensions");
  }
  in.ignore(1);  // newline terminating the header

  GridSpec spec;
  spec.dims_x = dims_x;
  spec.dims_y = dims_y;
  spec.dims_z = dims_z;
  spec.vox_size = vox_size;
  spec.grid_size_x = dims_x * vox_size;
  spec.grid_size_y = dims_y * vox_size;
  spec.grid_size_z = dims_z * vox_size;
  spec.origin = origin;

  VoxelGrid grid(spec);
  in.read(reinterpret_cast<char*>(grid.raw()), static_cast<std::streamsize>(grid.size()));
  if (in.gcount() != static_cast<std::streamsize>(grid.size())) {
    throw std::runtime_error("read_grid: truncated cell data");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.raw()[i] > 3) throw std::runtime_error("read_grid: invalid state byte");
  }
  return grid;
}

VoxelGrid read_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_grid: cannot open " + path);
  return read_grid(in);
}

}  // namespace voxmap
