#pragma once

#include <utility>
#include <vector>

#include "eacj/gsae.hpp"

namespace eacj {

struct ArcBounds {
  int min_len = 0;
  int max_len = 0;
};

/// Parameters of the two-circle arc test used to prefilter events before the
/// full junction machinery runs. Defaults are the published values of the
/// Arc* corner test.
struct FilterConfig {
  int inner_radius = 3;
  int outer_radius = 4;
  ArcBounds inner_arc{3, 6};
  ArcBounds outer_arc{4, 8};

  void validate() const;
};

/// Canonical discrete circle of the given radius, clockwise in image
/// coordinates (y down) starting from (radius, 0). Radii 3 (16 offsets) and
/// 4 (20 offsets) are supported.
const std::vector<std::pair<int, int>>& circle_offsets(int radius);

/// True iff on both circles the newest timestamps form a single contiguous
/// arc whose length falls inside the configured window, or whose complement
/// does. The patch center must be the pixel of the newest event.
bool is_candidate(const TimestampPatch& patch, const FilterConfig& cfg);

}  // namespace eacj
