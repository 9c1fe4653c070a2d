#pragma once

#include <deque>
#include <vector>

#include "eacj/detector.hpp"

namespace eacj {

struct RefineConfig {
  double radius = 5.0;   // r_d, pixels
  double window = 0.005;  // T, seconds

  void validate() const;
};

/// Streaming spatiotemporal suppression: among junctions within `radius`
/// pixels and `window` seconds of each other, only the one with the smallest
/// NFA survives (ties keep the earlier junction). Junctions are final once
/// they are older than the window; offer() and finish() emit finalized
/// junctions in timestamp order. Serial stage, single consumer.
class Refiner {
 public:
  explicit Refiner(const RefineConfig& cfg);

  struct Outcome {
    bool accepted = false;
    std::vector<Junction> finalized;  // flushed out of the window by this step
    std::vector<Junction> evicted;    // suppressed in favor of the offered one
  };

  Outcome offer(const Junction& j);
  std::vector<Junction> finish();

  std::size_t pending() const { return pending_.size(); }

 private:
  RefineConfig cfg_;
  std::deque<Junction> pending_;
};

}  // namespace eacj
