// Test-side oracles, kept independent of the library's computation paths:
// brute-force enumerations and Monte Carlo sampling used to pin expected
// values.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "eacj/binary_patch.hpp"

namespace oracles {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

inline double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

inline double d2pi(double a, double b) {
  double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

// Direction of (dx, dy): math convention on (x, -y).
inline double alpha(int dx, int dy) { return wrap_angle(std::atan2(-(double)dy, (double)dx)); }

// One draw of the per-pixel alignment statistic under the null: gradient
// present with probability p, normal angle uniform.
template <typename Rng>
double sample_gamma(double p, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) >= p) return 0.0;
  const double u = unit(rng) * kTwoPi;
  const double v = std::abs(std::cos(u)) - std::abs(std::sin(u));
  return v > 0.0 ? v : 0.0;
}

// Monte Carlo tail P(sum of J draws >= t) with `trials` samples.
struct McTail {
  double estimate;
  double stderr_at(double p_true) const {
    return std::sqrt(p_true * (1.0 - p_true) / trials);
  }
  double trials;
};

inline McTail mc_tail(double p, int J, double t, long trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  long hits = 0;
  for (long i = 0; i < trials; ++i) {
    double omega = 0.0;
    for (int j = 0; j < J; ++j) omega += sample_gamma(p, rng);
    if (omega >= t) ++hits;
  }
  return {static_cast<double>(hits) / trials, static_cast<double>(trials)};
}

// Plain 3x3 Sobel on a binary patch, written as explicit kernel loops.
inline void sobel_at(const eacj::BinaryPatch& b, int dx, int dy, int& ix, int& iy) {
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  ix = 0;
  iy = 0;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      const int v = b.at(dx + i - 1, dy + j - 1) ? 1 : 0;
      ix += kx[j][i] * v;
      iy += ky[j][i] * v;
    }
  }
}

// Alignment value at offset (dx, dy) from the integer Sobel responses.
// With (cos phi, sin phi) = (Iy, Ix)/|g| (image gradient mapped to the
// (x,-y) frame and rotated +pi/2) and (cos a, sin a) = (dx, -dy)/|q|,
// the angle-difference identities give integer numerators:
//   cos(phi-a) ~ Iy*dx - Ix*dy,  sin(phi-a) ~ Ix*dx + Iy*dy.
inline double gamma_from_sobel(int ix, int iy, int dx, int dy) {
  if ((ix == 0 && iy == 0) || (dx == 0 && dy == 0)) return 0.0;
  const int cos_num = iy * dx - ix * dy;
  const int sin_num = ix * dx + iy * dy;
  const int num = std::abs(cos_num) - std::abs(sin_num);
  if (num <= 0) return 0.0;
  return static_cast<double>(num) /
         (std::sqrt(static_cast<double>(ix * ix + iy * iy)) *
          std::sqrt(static_cast<double>(dx * dx + dy * dy)));
}

// Brute-force branch strength: row-major scan of the patch interior, with
// membership decided directly from the sector definition.
inline double brute_branch_strength(const eacj::BinaryPatch& b, int r, double theta,
                                    double tau, int* sector_size = nullptr) {
  const double delta = tau / r;
  double omega = 0.0;
  int count = 0;
  for (int dy = -b.radius; dy <= b.radius; ++dy) {
    for (int dx = -b.radius; dx <= b.radius; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (dx * dx + dy * dy > r * r) continue;
      if (d2pi(alpha(dx, dy), theta) > delta) continue;
      ++count;
      if (std::abs(dx) >= b.radius || std::abs(dy) >= b.radius) continue;  // border
      int ix, iy;
      sobel_at(b, dx, dy, ix, iy);
      omega += gamma_from_sobel(ix, iy, dx, dy);
    }
  }
  if (sector_size) *sector_size = count;
  return omega;
}

}  // namespace oracles
