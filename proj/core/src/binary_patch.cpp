#include "eacj/binary_patch.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eacj {

std::size_t BinaryPatch::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

BinaryPatch binarize(const TimestampPatch& patch, double count_scale) {
  if (!(count_scale > 0.0)) throw ParameterError("binarize: count scale must be positive");
  BinaryPatch out;
  out.radius = patch.radius;
  out.bits.assign(patch.values.size(), 0);

  struct Cell {
    double t;
    std::uint32_t idx;
  };
  std::vector<Cell> live;
  live.reserve(patch.values.size());
  for (std::uint32_t i = 0; i < patch.values.size(); ++i) {
    if (patch.values[i] >= 0.0) live.push_back({patch.values[i], i});
  }

  const double r1 = patch.radius + 1.0;
  const std::size_t wanted =
      static_cast<std::size_t>(std::ceil(count_scale * r1 * r1));
  const std::size_t n = std::min(wanted, live.size());
  const auto newer = [](const Cell& a, const Cell& b) {
    return a.t > b.t || (a.t == b.t && a.idx < b.idx);
  };
  if (n < live.size()) {
    std::nth_element(live.begin(), live.begin() + n, live.end(), newer);
  }
  for (std::size_t i = 0; i < n; ++i) out.bits[live[i].idx] = 1;
  return out;
}

}  // namespace eacj
