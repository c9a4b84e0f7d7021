#include "voxmap/sim/scene.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace voxmap::sim {

void Aabb::validate() const {
  if (!min.allFinite() || !max.allFinite() || !(min.x() < max.x()) || !(min.y() < max.y()) ||
      !(min.z() < max.z())) {
    throw std::invalid_argument("Aabb: min must be strictly below max on every axis");
  }
}

void Scene::validate() const {
  for (const Aabb& box : boxes) box.validate();
}

Scene Scene::empty() { return {}; }

Scene Scene::wall(double distance) {
  if (!(distance > 0.0)) throw std::invalid_argument("Scene::wall: distance must be positive");
  Scene s;
  s.boxes.push_back({{distance, -12.0, -12.0}, {distance + 0.3, 12.0, 12.0}});
  return s;
}

Scene Scene::box_field(std::uint64_t seed, int count) {
  if (count < 0) throw std::invalid_argument("Scene::box_field: negative count");
  // Thin pillar panels at one shared depth in front of a backdrop wall. The
  // layout is lattice-friendly for the default 0.15 m voxel size: panels are
  // one cell thick, their edges snap to cell boundaries with small insets so
  // every panel cell keeps a face strip wider than the pixel spacing, and the
  // shared depth keeps panel silhouettes from ever crossing each other for
  // cameras near the origin. The backdrop sits within sensor range, so depth
  // images of this world have no invalid returns.
  constexpr double vox = 0.15;
  Scene s;
  s.boxes.push_back({{6.47, -8.0, -8.0}, {6.77, 8.0, 8.0}});
  std::mt19937_64 rng(seed);
  struct Slot {
    double lane_y;
    bool upper;
  };
  std::vector<Slot> slots;
  for (const double y : {-1.5, -0.75, 0.0, 0.75, 1.5}) {
    slots.push_back({y, false});
    slots.push_back({y, true});
  }
  std::shuffle(slots.begin(), slots.end(), rng);
  std::uniform_int_distribution<int> x_cell(18, 22);     // shared depth in [2.7, 3.45)
  std::uniform_int_distribution<int> width_cells(2, 4);  // 0.30 .. 0.60 m
  std::uniform_int_distribution<int> gap_cells(1, 3);    // half-height gap at the camera level
  const double x_lo = vox * x_cell(rng) + 0.02;
  const int n = std::min(count, static_cast<int>(slots.size()));
  for (int i = 0; i < n; ++i) {
    const Slot& slot = slots[static_cast<std::size_t>(i)];
    const int w = width_cells(rng);
    const int k = gap_cells(rng);
    const double y_lo = slot.lane_y - vox * (w / 2) + 0.02;
    const double y_hi = y_lo + vox * w - 0.04;
    const double z_lo = slot.upper ? vox * k + 0.045 : -1.6;
    const double z_hi = slot.upper ? 1.6 : -vox * k - 0.045;
    s.boxes.push_back({{x_lo, y_lo, z_lo}, {x_lo + 0.11, y_hi, z_hi}});
  }
  return s;
}

Scene load_scene(const std::string& name_or_path, std::uint64_t seed) {
  if (name_or_path == "empty") return Scene::empty();
  if (name_or_path == "wall") return Scene::wall();
  if (name_or_path == "boxes") return Scene::box_field(seed);

  std::ifstream in(name_or_path);
  if (!in) {
    throw std::runtime_error("load_scene: '" + name_or_path +
                             "' is neither a known scene name (empty, wall, boxes) nor a "
                             "readable file");
  }
  Scene s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    Aabb box;
    if (!(ls >> tag >> box.min.x() >> box.min.y() >> box.min.z() >> box.max.x() >>
          box.max.y() >> box.max.z()) ||
        tag != "box") {
      throw std::runtime_error("load_scene: malformed line " + std::to_string(line_no) +
                               " in " + name_or_path);
    }
    box.validate();
    s.boxes.push_back(box);
  }
  return s;
}

void save_scene(const Scene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_scene: cannot open " + path);
  out.precision(std::numeric_limits<double>::max_digits10);
  for (const Aabb& box : scene.boxes) {
    out << "box " << box.min.x() << ' ' << box.min.y() << ' ' << box.min.z() << ' '
        << box.max.x() << ' ' << box.max.y() << ' ' << box.max.z() << '\n';
  }
  if (!out) throw std::runtime_error("save_scene: write failed for " + path);
}

}  // namespace voxmap::sim
