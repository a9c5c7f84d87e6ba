#include "modelglass/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace modelglass {

std::optional<int> thread_limit_from_env() {
  const char* raw = std::getenv("MODELGLASS_THREADS");
  if (raw == nullptr) return std::nullopt;
  try {
    int value = std::stoi(raw);
    if (value > 0) return value;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

int apply_thread_limit_from_env() {
  if (auto limit = thread_limit_from_env()) omp_set_num_threads(*limit);
  return omp_get_max_threads();
}

ScopedThreadCount::ScopedThreadCount(int threads) : previous_(omp_get_max_threads()) {
  omp_set_num_threads(threads);
}

ScopedThreadCount::~ScopedThreadCount() { omp_set_num_threads(previous_); }

}  // namespace modelglass
