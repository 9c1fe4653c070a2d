#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eacj/types.hpp"

namespace eacj {

struct BranchTemplate {
  double length = 0.0;       // pixels
  double orientation = 0.0;  // radians, (x, -y) math convention
};

struct JunctionTemplate {
  std::string type;  // "L", "Y", "T", "X" or empty for free-form
  double cx = 0.0;   // center at t = 0
  double cy = 0.0;
  std::vector<BranchTemplate> branches;
};

/// Scene of rigid junction templates translating at a common velocity over a
/// pixel grid, plus uniform background noise. A pixel emits an event when a
/// branch edge crosses it; polarity follows the crossing direction.
struct SceneSpec {
  int width = 240;
  int height = 180;
  double duration = 1.0;        // seconds
  double vx = 0.0;              // px/s
  double vy = 0.0;
  double noise_rate = 0.0;      // events / s / pixel
  std::uint64_t seed = 0;
  int events_per_crossing = 1;  // burst size per pixel crossing
  double burst_duration = 0.0;  // spread of the burst, seconds
  double truth_interval = 0.001;
  std::vector<JunctionTemplate> junctions;

  void validate() const;
};

struct GroundTruthRecord {
  double t = 0.0;
  double cx = 0.0;  // subpixel center
  double cy = 0.0;
  std::vector<BranchTemplate> branches;
};

struct SceneOutput {
  std::vector<Event> events;
  std::vector<GroundTruthRecord> truth;  // one record per junction per instant
  std::vector<std::string> warnings;
};

SceneOutput generate(const SceneSpec& spec);

/// Linear interpolation of the center path between truth samples of one
/// junction's records (time-sorted). t outside the sampled span is an error.
GroundTruthRecord truth_at(const std::vector<GroundTruthRecord>& records, double t);

SceneSpec load_scene_file(const std::string& path);
void write_truth_file(const std::string& path,
                      const std::vector<GroundTruthRecord>& records);
std::vector<GroundTruthRecord> load_truth_file(const std::string& path);

}  // namespace eacj
