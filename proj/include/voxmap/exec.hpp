#pragma once

namespace voxmap {

/// How the data-parallel stages run. Sequential is the deterministic
/// reference: scalar kernels, one thread, fixed iteration order.
enum class ExecutionMode {
  Sequential,
  DataParallel,
};

/// Which tracer frees space in step 3.
enum class TracerMode {
  Bundled,
  PerPixelBaseline,
};

inline const char* to_string(ExecutionMode m) {
  return m == ExecutionMode::Sequential ? "sequential" : "parallel";
}

inline const char* to_string(TracerMode m) {
  return m == TracerMode::Bundled ? "bundled" : "per-pixel";
}

}  // namespace voxmap
