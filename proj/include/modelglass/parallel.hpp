#pragma once

#include <optional>

namespace modelglass {

/// Thread cap from MODELGLASS_THREADS, if set to a positive integer.
std::optional<int> thread_limit_from_env();

/// Applies the MODELGLASS_THREADS cap to OpenMP; returns the effective count.
int apply_thread_limit_from_env();

/// Sets the OpenMP thread count for the lifetime of the object.
class ScopedThreadCount {
 public:
  explicit ScopedThreadCount(int threads);
  ~ScopedThreadCount();
  ScopedThreadCount(const ScopedThreadCount&) = delete;
  ScopedThreadCount& operator=(const ScopedThreadCount&) = delete;

 private:
  int previous_;
};

}  // namespace modelglass
