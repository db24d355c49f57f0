#include "energame/tolerance.hpp"

#include <cstdlib>
#include <string>

namespace energame::tol {

double core() {
  static const double value = [] {
    if (const char* env = std::getenv("ENERGAME_TOL")) {
      try {
        const double v = std::stod(env);
        if (v > 0.0) return v;
      } catch (const std::exception&) {
        // fall through to the default on unparseable input
      }
    }
    return kCoreDefault;
  }();
  return value;
}

}  // namespace energame::tol
