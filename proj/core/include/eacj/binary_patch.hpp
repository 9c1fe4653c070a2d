#pragma once

#include <cstdint>
#include <vector>

#include "eacj/gsae.hpp"

namespace eacj {

struct BinaryPatch {
  int radius = 0;
  std::vector<std::uint8_t> bits;  // (2r+1)^2, row-major

  int side() const { return 2 * radius + 1; }
  bool at(int dx, int dy) const {
    return bits[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)] != 0;
  }
  void set(int dx, int dy, bool v) {
    bits[static_cast<std::size_t>(dy + radius) * side() + (dx + radius)] = v ? 1 : 0;
  }
  std::size_t count() const;
};

/// Marks the ceil(count_scale * (r+1)^2) newest cells of the patch (all live
/// cells when fewer exist). Ties at the cutoff timestamp go to the lower
/// row-major index; sentinel cells are never set.
BinaryPatch binarize(const TimestampPatch& patch, double count_scale = 1.0);

}  // namespace eacj
