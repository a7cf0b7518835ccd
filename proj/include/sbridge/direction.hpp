#pragma once

#include <array>
#include <cmath>

#include "sbridge/errors.hpp"

namespace sbridge {

// Unit vector in 3-space. The constructor normalizes; a zero (or non-finite)
// input raises ZeroDirection.
struct Direction {
  std::array<double, 3> v{0.0, 0.0, 1.0};

  Direction() = default;
  Direction(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw ZeroDirection("direction vector must be nonzero and finite");
    }
    v = {x / n, y / n, z / n};
  }

  double operator[](int i) const { return v[i]; }
  Direction operator-() const { return Direction(-v[0], -v[1], -v[2]); }
  bool operator==(const Direction&) const = default;
};

}  // namespace sbridge
