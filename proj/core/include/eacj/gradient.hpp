#pragma once

#include <cstdint>
#include <vector>

#include "eacj/binary_patch.hpp"

namespace eacj {

/// Per-pixel 3x3 Sobel response on a binary patch. Presence is boolean
/// (whether the response is nonzero at all); the normal angle phi is the
/// gradient direction rotated by +pi/2, in the fixed convention: x
/// rightward, y downward, angles measured counterclockwise in the
/// mathematical sense applied to (x, -y). The border ring carries no
/// gradient.
struct GradientField {
  int radius = 0;
  std::vector<std::int8_t> gx;        // image-frame Sobel d/dx, in [-4, 4]
  std::vector<std::int8_t> gy;        // image-frame Sobel d/dy
  std::vector<std::uint8_t> present;  // nonzero response
  std::vector<double> norm;           // sqrt(gx^2 + gy^2) where present, else 0

  int side() const { return 2 * radius + 1; }
  std::size_t index(int dx, int dy) const {
    return static_cast<std::size_t>(dy + radius) * side() + (dx + radius);
  }
  bool has(int dx, int dy) const { return present[index(dx, dy)] != 0; }
  /// Normal angle in [0, 2pi); meaningful only where has() is true.
  double phi(int dx, int dy) const;
};

GradientField gradient_field(const BinaryPatch& patch);

/// Alignment of the gradient normal at offset q = (dx, dy) with the
/// direction from the patch center to q:
///   ||I(q)|| * max(|cos(phi - alpha)| - |sin(phi - alpha)|, 0).
/// Evaluated trig-free from the integer Sobel responses; 0 where no
/// gradient is present or at the center.
double gamma_alignment(const GradientField& g, int dx, int dy);

}  // namespace eacj
