#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eacj/detector.hpp"
#include "eacj/synth.hpp"

namespace eacj {

struct TrackSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Track {
  int id = 0;
  std::vector<TrackSample> samples;  // time-sorted
};

/// Tracked reference trajectories ("track_id t x y" per line). Detections
/// are matched against the track positions interpolated at their timestamp.
class TrackFile {
 public:
  static TrackFile load(const std::string& path);
  /// Builds tracks from synthetic truth records; junctions are identified by
  /// their per-instant template order.
  static TrackFile from_truth(const std::vector<GroundTruthRecord>& records);

  const std::vector<Track>& tracks() const { return tracks_; }
  void add(Track track);

  /// Distance from (x, y) to the nearest track interpolated at time t;
  /// nullopt when no track spans t.
  std::optional<double> nearest_distance(double t, double x, double y) const;

 private:
  std::vector<Track> tracks_;
};

enum class DetectionLabel { TruePositive, FalsePositive, Ignore };
enum class NonDetectionLabel { FalseNegative, TrueNegative, Ignore };

inline constexpr double kInnerCylinder = 3.5;  // pixels
inline constexpr double kOuterCylinder = 5.0;

DetectionLabel label_detection(const Junction& j, const TrackFile& tracks);
NonDetectionLabel label_non_detection(const Event& e, const TrackFile& tracks);

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;
};

struct EvalMetrics {
  std::optional<double> fpr;       // FP / (FP + TN)
  std::optional<double> accuracy;  // TP / (TP + FP)
};

EvalMetrics metrics(const ConfusionCounts& counts);

std::string format_metrics_report(const ConfusionCounts& counts,
                                  const EvalMetrics& m,
                                  const std::string& scene_name);

}  // namespace eacj
