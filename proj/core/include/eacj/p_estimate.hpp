#pragma once

#include <cstddef>
#include <vector>

#include "eacj/binary_patch.hpp"
#include "eacj/gsae.hpp"

namespace eacj {

/// Fraction of interior pixels whose Sobel response is nonzero.
double gradient_presence_fraction(const BinaryPatch& patch);

struct PEstimateOptions {
  int radius = 15;
  std::size_t stride = 1;  // measure every stride-th event
  double count_scale = 1.0;
};

/// Replays the events through the surface (all of them, in order) and, for
/// every sampled event, binarizes its local patch and records the gradient
/// presence fraction. Returns the mean over sampled events.
double estimate_p(const std::vector<Event>& events, Gsae& gsae,
                  const PEstimateOptions& opts = {});

}  // namespace eacj
