#include "eacj/sector.hpp"

#include <cmath>
#include <set>

namespace eacj {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
}  // namespace

double angle_distance(double a, double b) {
  double d = std::abs(a - b);
  d = std::fmod(d, kTwoPi);
  return std::min(d, kTwoPi - d);
}

double offset_angle(int dx, int dy) {
  double a = std::atan2(static_cast<double>(-dy), static_cast<double>(dx));
  if (a < 0.0) a += kTwoPi;
  return a;
}

std::vector<SectorMember> sector_members(const SectorSpec& spec, int patch_radius) {
  if (spec.r < 1) throw ParameterError("sector_members: radius must be >= 1");
  if (spec.r > patch_radius) {
    throw ParameterError("sector_members: sector radius " + std::to_string(spec.r) +
                         " exceeds patch radius " + std::to_string(patch_radius));
  }
  const double delta = spec.half_width();
  if (!(delta > 0.0 && delta < kPi)) {
    throw ParameterError("sector_members: half-width must lie in (0, pi)");
  }
  const int r = spec.r;
  const long long rr = static_cast<long long>(r) * r;
  std::vector<SectorMember> members;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (static_cast<long long>(dx) * dx + static_cast<long long>(dy) * dy > rr) continue;
      if (angle_distance(offset_angle(dx, dy), spec.theta) > delta) continue;
      members.push_back({dx, dy});
    }
  }
  return members;
}

SectorCache::SectorCache(int r_min, int r_max, int theta_bins, double tau)
    : r_min_(r_min), r_max_(r_max), theta_bins_(theta_bins), tau_(tau) {
  if (r_min < 1 || r_max < r_min) throw ParameterError("SectorCache: bad scale range");
  if (theta_bins < 1) throw ParameterError("SectorCache: theta bins must be >= 1");
  if (!(tau > 0.0)) throw ParameterError("SectorCache: tau must be positive");
  members_.resize(static_cast<std::size_t>(r_max - r_min + 1) * theta_bins);
  for (int r = r_min; r <= r_max; ++r) {
    for (int bin = 0; bin < theta_bins; ++bin) {
      members_[index(r, bin)] = sector_members({r, bin_angle(bin), tau}, r_max);
    }
  }
}

double SectorCache::bin_angle(int bin) const {
  return kTwoPi * static_cast<double>(bin) / theta_bins_;
}

const std::vector<SectorMember>& SectorCache::members(int r, int bin) const {
  return members_[index(r, bin)];
}

std::size_t SectorCache::index(int r, int bin) const {
  if (r < r_min_ || r > r_max_) throw RangeError("SectorCache: scale out of range");
  if (bin < 0 || bin >= theta_bins_) throw RangeError("SectorCache: bin out of range");
  return static_cast<std::size_t>(r - r_min_) * theta_bins_ + bin;
}

std::vector<int> SectorCache::distinct_sizes() const {
  std::set<int> sizes;
  for (const auto& m : members_) {
    if (!m.empty()) sizes.insert(static_cast<int>(m.size()));
  }
  return {sizes.begin(), sizes.end()};
}

}  // namespace eacj
