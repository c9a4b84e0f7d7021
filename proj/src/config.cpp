#include "voxmap/config.hpp"

#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace voxmap {

namespace {

std::string trim(const std::string& s) {
  const std::size_t first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const std::size_t last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: invalid number for " + key + ": '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config: invalid integer for " + key + ": '" + value + "'");
  }
}

}  // namespace

TracerMode parse_tracer_mode(const std::string& value) {
  if (value == "bundled") return TracerMode::Bundled;
  if (value == "per-pixel" || value == "per_pixel" || value == "per_pixel_baseline") {
    return TracerMode::PerPixelBaseline;
  }
  throw std::runtime_error("config: tracer_mode must be 'bundled' or 'per-pixel', got '" +
                           value + "'");
}

ExecutionMode parse_execution_mode(const std::string& value) {
  if (value == "sequential") return ExecutionMode::Sequential;
  if (value == "parallel" || value == "data_parallel") return ExecutionMode::DataParallel;
  throw std::runtime_error("config: parallelism must be 'sequential' or 'parallel', got '" +
                           value + "'");
}

AppConfig parse_config(const std::string& text) {
  AppConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: missing '=' on line " + std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::runtime_error("config: empty key or value on line " + std::to_string(line_no));
    }

    if (key == "grid_size_x") {
      cfg.grid_size_x = parse_double(key, value);
    } else if (key == "grid_size_y") {
      cfg.grid_size_y = parse_double(key, value);
    } else if (key == "grid_size_z") {
      cfg.grid_size_z = parse_double(key, value);
    } else if (key == "vox_size") {
      cfg.vox_size = parse_double(key, value);
    } else if (key == "fov_x_deg") {
      cfg.fov_x_deg = parse_double(key, value);
    } else if (key == "fov_y_deg") {
      cfg.fov_y_deg = parse_double(key, value);
    } else if (key == "width") {
      cfg.width = static_cast<int>(parse_int(key, value));
    } else if (key == "height") {
      cfg.height = static_cast<int>(parse_int(key, value));
    } else if (key == "depth") {
      cfg.depth = parse_double(key, value);
    } else if (key == "vox_inf") {
      cfg.vox_inf = static_cast<int>(parse_int(key, value));
    } else if (key == "tracer_mode") {
      cfg.tracer_mode = parse_tracer_mode(value);
    } else if (key == "parallelism") {
      cfg.parallelism = parse_execution_mode(value);
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else {
      throw std::runtime_error("config: unknown key '" + key + "' on line " +
                               std::to_string(line_no));
    }
  }
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

CameraModel camera_from_config(const AppConfig& cfg) {
  CameraModel cam;
  cam.fov_x = cfg.fov_x_deg * std::numbers::pi / 180.0;
  cam.fov_y = cfg.fov_y_deg * std::numbers::pi / 180.0;
  cam.width = cfg.width;
  cam.height = cfg.height;
  cam.max_depth = cfg.depth;
  return cam;
}

GridSpec grid_from_config(const AppConfig& cfg, const Eigen::Vector3d& center) {
  return GridSpec::create_centered(cfg.grid_size_x, cfg.grid_size_y, cfg.grid_size_z,
                                   cfg.vox_size, center);
}

PipelineConfig pipeline_from_config(const AppConfig& cfg, const Eigen::Vector3d& center) {
  PipelineConfig pc;
  pc.grid = grid_from_config(cfg, center);
  pc.camera = camera_from_config(cfg);
  pc.integrator.vox_inf = cfg.vox_inf;
  pc.depth = cfg.depth;
  pc.tracer_mode = cfg.tracer_mode;
  pc.parallelism = cfg.parallelism;
  pc.validate();
  return pc;
}

}  // namespace voxmap
