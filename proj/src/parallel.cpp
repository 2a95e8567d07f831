#include "nres/parallel.hpp"

#include <cstdlib>
#include <string>

namespace nres {

int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("TOOL_THREADS")) {
      try {
        const int n = std::stoi(env);
        if (n >= 1) return n;
      } catch (...) {
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }();
  return cached;
}

}  // namespace nres
