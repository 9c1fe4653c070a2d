#pragma once

#include <vector>

#include "eacj/types.hpp"

namespace eacj {

/// Angular wedge of radius r and half-width tau/r around direction theta,
/// anchored at the patch center.
struct SectorSpec {
  int r = 3;
  double theta = 0.0;  // [0, 2pi)
  double tau = 1.0;

  double half_width() const { return tau / r; }
};

struct SectorMember {
  int dx = 0;
  int dy = 0;
};

/// Circular distance between two angles, min(|a-b|, 2pi-|a-b|).
double angle_distance(double a, double b);

/// Direction of the offset (dx, dy) in the (x, -y) math convention,
/// normalized to [0, 2pi).
double offset_angle(int dx, int dy);

/// All integer offsets q != 0 with ||q|| <= r and d_2pi(alpha(q), theta) <=
/// tau/r, in row-major order (dy, then dx ascending). spec.r must not exceed
/// the patch radius.
std::vector<SectorMember> sector_members(const SectorSpec& spec, int patch_radius);

/// Member lists for every (scale, orientation bin) pair, built once and
/// shared read-only by detector workers.
class SectorCache {
 public:
  SectorCache(int r_min, int r_max, int theta_bins, double tau);

  int r_min() const { return r_min_; }
  int r_max() const { return r_max_; }
  int theta_bins() const { return theta_bins_; }
  double tau() const { return tau_; }
  double bin_angle(int bin) const;
  double half_width(int r) const { return tau_ / r; }

  const std::vector<SectorMember>& members(int r, int bin) const;
  int sector_size(int r, int bin) const {
    return static_cast<int>(members(r, bin).size());
  }

  /// Distinct nonzero sector sizes across the cache, ascending.
  std::vector<int> distinct_sizes() const;

 private:
  std::size_t index(int r, int bin) const;

  int r_min_;
  int r_max_;
  int theta_bins_;
  double tau_;
  std::vector<std::vector<SectorMember>> members_;
};

}  // namespace eacj
