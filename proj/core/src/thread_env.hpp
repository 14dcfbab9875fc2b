#pragma once

#include <cstdlib>
#include <thread>

namespace groverpt::detail {

inline int thread_count_from_env() {
  if (const char* env = std::getenv("GROVERPT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace groverpt::detail
