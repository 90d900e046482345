#include "ergorate/spectral_core.hpp"

#include <cmath>

namespace ergorate {

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = ax * ax;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(ax) / ax;
}

}  // namespace ergorate
