#include "eacj/gradient.hpp"

#include <cmath>

namespace eacj {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double GradientField::phi(int dx, int dy) const {
  const std::size_t i = index(dx, dy);
  // (cos phi, sin phi) = (Iy, Ix) / |g|: the image-frame gradient mapped to
  // the (x, -y) math frame and rotated by +pi/2.
  double a = std::atan2(static_cast<double>(gx[i]), static_cast<double>(gy[i]));
  if (a < 0.0) a += kTwoPi;
  return a;
}

GradientField gradient_field(const BinaryPatch& patch) {
  if (patch.side() < 3) throw ParameterError("gradient_field: patch side must be >= 3");
  GradientField g;
  g.radius = patch.radius;
  const std::size_t n = patch.bits.size();
  g.gx.assign(n, 0);
  g.gy.assign(n, 0);
  g.present.assign(n, 0);
  g.norm.assign(n, 0.0);

  const int r = patch.radius;
  for (int dy = -r + 1; dy <= r - 1; ++dy) {
    for (int dx = -r + 1; dx <= r - 1; ++dx) {
      const int ix = (patch.at(dx + 1, dy - 1) + 2 * patch.at(dx + 1, dy) +
                      patch.at(dx + 1, dy + 1)) -
                     (patch.at(dx - 1, dy - 1) + 2 * patch.at(dx - 1, dy) +
                      patch.at(dx - 1, dy + 1));
      const int iy = (patch.at(dx - 1, dy + 1) + 2 * patch.at(dx, dy + 1) +
                      patch.at(dx + 1, dy + 1)) -
                     (patch.at(dx - 1, dy - 1) + 2 * patch.at(dx, dy - 1) +
                      patch.at(dx + 1, dy - 1));
      if (ix == 0 && iy == 0) continue;
      const std::size_t i = g.index(dx, dy);
      g.gx[i] = static_cast<std::int8_t>(ix);
      g.gy[i] = static_cast<std::int8_t>(iy);
      g.present[i] = 1;
      g.norm[i] = std::sqrt(static_cast<double>(ix * ix + iy * iy));
    }
  }
  return g;
}

double gamma_alignment(const GradientField& g, int dx, int dy) {
  if (dx == 0 && dy == 0) return 0.0;
  const std::size_t i = g.index(dx, dy);
  if (!g.present[i]) return 0.0;
  const int ix = g.gx[i];
  const int iy = g.gy[i];
  // cos(phi - alpha) and sin(phi - alpha) share the positive denominator
  // |g| * |q|, so only the integer numerators decide the max(.., 0) clip:
  //   cos num = Iy*dx - Ix*dy,   sin num = Ix*dx + Iy*dy.
  const int cos_num = iy * dx - ix * dy;
  const int sin_num = ix * dx + iy * dy;
  const int num = std::abs(cos_num) - std::abs(sin_num);
  if (num <= 0) return 0.0;
  const double dist = std::sqrt(static_cast<double>(dx * dx + dy * dy));
  return static_cast<double>(num) / (g.norm[i] * dist);
}

}  // namespace eacj
