#pragma once

#include <vector>

#include "eacj/types.hpp"

namespace eacj {

/// Square window of timestamps copied out of the G-SAE, centered at (cx, cy)
/// with half-side `radius`. Cells outside the sensor hold the sentinel.
struct TimestampPatch {
  int radius = 0;
  int cx = 0;
  int cy = 0;
  std::vector<double> values;  // (2r+1)^2, row-major

  int side() const { return 2 * radius + 1; }
  double at(int dx, int dy) const {
    return values[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
  }
  double& at(int dx, int dy) {
    return values[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)];
  }
  bool live(int dx, int dy) const { return at(dx, dy) >= 0.0; }

  /// Central (2r+1)x(2r+1) sub-window, r <= radius.
  TimestampPatch central(int r) const;
};

/// Global Surface of Active Events: per pixel, the timestamp of the most
/// recent event, or the sentinel for pixels that never fired.
///
/// Single writer in stream order; readers take immutable patch snapshots
/// between updates.
class Gsae {
 public:
  static constexpr double kNeverFired = -1.0;

  Gsae(int width, int height);

  void update(const Event& e);

  double at(int x, int y) const { return cells_[index(x, y)]; }

  /// (2r+1)x(2r+1) snapshot around (cx, cy); out-of-sensor cells get the
  /// sentinel. The center may be anywhere, including outside the sensor.
  TimestampPatch extract(int cx, int cy, int radius) const;

  int width() const { return width_; }
  int height() const { return height_; }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_;
  int height_;
  std::vector<double> cells_;
};

}  // namespace eacj
