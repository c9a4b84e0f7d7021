#pragma once

#include <cstdint>

namespace voxmap {

/// Cell state of a voxel. One byte per voxel; the numeric values are part of
/// the grid dump format and must not change.
enum class VoxelState : std::uint8_t {
  Unknown = 0,
  Free = 1,
  Occupied = 2,
  /// Traversed by a ray after it passed an occupied voxel: occluded space
  /// observed this frame, as opposed to space outside the field of view.
  /// Only appears in measurement grids; normalized away on merge.
  UnknownTraced = 3,
};

inline const char* to_string(VoxelState s) {
  switch (s) {
    case VoxelState::Unknown: return "unknown";
    case VoxelState::Free: return "free";
    case VoxelState::Occupied: return "occupied";
    case VoxelState::UnknownTraced: return "unknown_traced";
  }
  return "invalid";
}

}  // namespace voxmap
