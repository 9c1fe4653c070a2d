#include "eacj/gsae.hpp"

#include <algorithm>

namespace eacj {

TimestampPatch TimestampPatch::central(int r) const {
  if (r > radius) throw ParameterError("central(): sub-radius exceeds patch radius");
  TimestampPatch sub;
  sub.radius = r;
  sub.cx = cx;
  sub.cy = cy;
  sub.values.resize(static_cast<std::size_t>(sub.side()) * sub.side());
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) sub.at(dx, dy) = at(dx, dy);
  return sub;
}

Gsae::Gsae(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) throw ParameterError("Gsae: non-positive sensor size");
  cells_.assign(static_cast<std::size_t>(width) * height, kNeverFired);
}

void Gsae::update(const Event& e) {
  if (e.x < 0 || e.x >= width_ || e.y < 0 || e.y >= height_) {
    throw BoundsError("Gsae::update: event at (" + std::to_string(e.x) + "," +
                      std::to_string(e.y) + ") outside " + std::to_string(width_) +
                      "x" + std::to_string(height_));
  }
  cells_[index(e.x, e.y)] = e.t;
}

TimestampPatch Gsae::extract(int cx, int cy, int radius) const {
  TimestampPatch patch;
  patch.radius = radius;
  patch.cx = cx;
  patch.cy = cy;
  patch.values.assign(static_cast<std::size_t>(patch.side()) * patch.side(),
                      kNeverFired);
  const int x0 = std::max(cx - radius, 0);
  const int x1 = std::min(cx + radius, width_ - 1);
  const int y0 = std::max(cy - radius, 0);
  const int y1 = std::min(cy + radius, height_ - 1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) patch.at(x - cx, y - cy) = cells_[index(x, y)];
  return patch;
}

}  // namespace eacj
