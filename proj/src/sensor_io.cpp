#include "voxmap/sensor_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace voxmap {

namespace {

bool has_extension(const std::string& path, const std::string& ext) {
  return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
}

/// Reads one whitespace-delimited token, skipping '#' comments (PGM style).
std::string next_token(std::istream& in) {
  std::string tok;
  while (in >> tok) {
    if (tok[0] != '#') return tok;
    in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  }
  throw std::runtime_error("depth image: truncated header");
}

int parse_dim(const std::string& tok) {
  const int v = std::stoi(tok);
  if (v <= 0) throw std::runtime_error("depth image: non-positive dimension");
  return v;
}

DepthImage load_pgm(std::istream& in) {
  if (next_token(in) != "P5") throw std::runtime_error("depth image: not a binary PGM");
  const int width = parse_dim(next_token(in));
  const int height = parse_dim(next_token(in));
  if (next_token(in) != "65535") {
    throw std::runtime_error("depth image: expected 16-bit PGM (maxval 65535)");
  }
  in.ignore(1);  // single whitespace after maxval

  DepthImage img(width, height);
  std::vector<std::uint8_t> bytes(img.depths.size() * 2);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw std::runtime_error("depth image: truncated PGM payload");
  }
  for (std::size_t i = 0; i < img.depths.size(); ++i) {
    const unsigned mm = (static_cast<unsigned>(bytes[2 * i]) << 8) | bytes[2 * i + 1];
    img.depths[i] = mm == 0 ? 0.0f : static_cast<float>(mm) / 1000.0f;
  }
  return img;
}

void save_pgm(const DepthImage& img, std::ostream& out) {
  out << "P5\n" << img.width << ' ' << img.height << "\n65535\n";
  std::vector<std::uint8_t> bytes(img.depths.size() * 2);
  for (std::size_t i = 0; i < img.depths.size(); ++i) {
    unsigned mm = 0;
    const float d = img.depths[i];
    if (DepthImage::valid_depth(d)) {
      mm = static_cast<unsigned>(
          std::clamp(std::lround(static_cast<double>(d) * 1000.0), 1L, 65535L));
    }
    bytes[2 * i] = static_cast<std::uint8_t>(mm >> 8);
    bytes[2 * i + 1] = static_cast<std::uint8_t>(mm & 0xff);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

DepthImage load_f32(std::istream& in) {
  std::string magic;
  int width = 0, height = 0;
  in >> magic >> width >> height;
  if (!in || magic != "DEPTHF32") throw std::runtime_error("depth image: bad DEPTHF32 header");
  if (width <= 0 || height <= 0) throw std::runtime_error("depth image: non-positive dimension");
  in.ignore(1);

  DepthImage img(width, height);
  in.read(reinterpret_cast<char*>(img.depths.data()),
          static_cast<std::streamsize>(img.depths.size() * sizeof(float)));
  if (in.gcount() != static_cast<std::streamsize>(img.depths.size() * sizeof(float))) {
    throw std::runtime_error("depth image: truncated DEPTHF32 payload");
  }
  return img;
}

void save_f32(const DepthImage& img, std::ostream& out) {
  out << "DEPTHF32\n" << img.width << ' ' << img.height << '\n';
  out.write(reinterpret_cast<const char*>(img.depths.data()),
            static_cast<std::streamsize>(img.depths.size() * sizeof(float)));
}

}  // namespace

PointCloud load_point_cloud(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_point_cloud: cannot open " + path);
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double x = 0.0, y = 0.0, z = 0.0;
    if (!(ls >> x >> y >> z)) {
      throw std::runtime_error("load_point_cloud: malformed line " + std::to_string(line_no) +
                               " in " + path);
    }
    cloud.add(x, y, z);
  }
  return cloud;
}

void save_point_cloud(const PointCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_point_cloud: cannot open " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << cloud.xs()[i] << ' ' << cloud.ys()[i] << ' ' << cloud.zs()[i] << '\n';
  }
  if (!out) throw std::runtime_error("save_point_cloud: write failed for " + path);
}

DepthImage load_depth_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_depth_image: cannot open " + path);
  if (has_extension(path, ".pgm")) return load_pgm(in);
  if (has_extension(path, ".f32")) return load_f32(in);
  throw std::runtime_error("load_depth_image: unsupported extension (use .pgm or .f32): " + path);
}

void save_depth_image(const DepthImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_depth_image: cannot open " + path);
  if (has_extension(path, ".pgm")) {
    save_pgm(img, out);
  } else if (has_extension(path, ".f32")) {
    save_f32(img, out);
  } else {
    throw std::runtime_error("save_depth_image: unsupported extension (use .pgm or .f32): " +
                             path);
  }
  if (!out) throw std::runtime_error("save_depth_image: write failed for " + path);
}

}  // namespace voxmap
