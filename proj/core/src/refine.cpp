#include "eacj/refine.hpp"

#include <algorithm>

namespace eacj {

void RefineConfig::validate() const {
  if (!(radius >= 0.0)) throw ParameterError("refine: radius must be >= 0");
  if (!(window >= 0.0)) throw ParameterError("refine: window must be >= 0");
}

Refiner::Refiner(const RefineConfig& cfg) : cfg_(cfg) { cfg_.validate(); }

Refiner::Outcome Refiner::offer(const Junction& j) {
  Outcome out;
  if (!pending_.empty() && j.t < pending_.back().t) {
    throw ParameterError("Refiner: junctions must arrive in timestamp order");
  }
  // Junctions older than the window can no longer conflict with anything.
  while (!pending_.empty() && pending_.front().t < j.t - cfg_.window) {
    out.finalized.push_back(pending_.front());
    pending_.pop_front();
  }
  const double rr = cfg_.radius * cfg_.radius;
  auto conflicts = [&](const Junction& k) {
    const double dx = k.x - j.x;
    const double dy = k.y - j.y;
    return dx * dx + dy * dy <= rr;  // all pending are within the time window
  };
  for (const Junction& k : pending_) {
    if (conflicts(k) && k.nfa <= j.nfa) {
      out.accepted = false;  // an equal-or-stronger junction already holds the cell
      return out;
    }
  }
  for (auto it = pending_.begin(); it != pending_.end();) {
    if (conflicts(*it)) {
      out.evicted.push_back(*it);
      it = pending_.erase(it);
    } else {
      ++it;
    }
  }
  pending_.push_back(j);
  out.accepted = true;
  return out;
}

std::vector<Junction> Refiner::finish() {
  std::vector<Junction> rest(pending_.begin(), pending_.end());
  pending_.clear();
  return rest;
}

}  // namespace eacj
