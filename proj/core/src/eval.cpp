#include "eacj/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace eacj {

TrackFile TrackFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open track file: " + path);
  std::map<int, Track> by_id;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream ss(line);
    int id = 0;
    TrackSample s;
    if (!(ss >> id >> s.t >> s.x >> s.y)) {
      throw ParseError("track line " + std::to_string(line_number) +
                       ": expected 'track_id t x y'");
    }
    Track& track = by_id[id];
    track.id = id;
    if (!track.samples.empty() && s.t < track.samples.back().t) {
      throw ParseError("track line " + std::to_string(line_number) + ": track " +
                       std::to_string(id) + " samples not time-sorted");
    }
    track.samples.push_back(s);
  }
  TrackFile tf;
  for (auto& [id, track] : by_id) tf.tracks_.push_back(std::move(track));
  return tf;
}

TrackFile TrackFile::from_truth(const std::vector<GroundTruthRecord>& records) {
  // Records come grouped per sampling instant in template order; the index
  // within the instant identifies the junction.
  TrackFile tf;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t n = 1;
    while (i + n < records.size() && records[i + n].t == records[i].t) ++n;
    for (std::size_t k = 0; k < n; ++k) {
      if (tf.tracks_.size() <= k) {
        Track t;
        t.id = static_cast<int>(k);
        tf.tracks_.push_back(t);
      }
      const GroundTruthRecord& r = records[i + k];
      tf.tracks_[k].samples.push_back({r.t, r.cx, r.cy});
    }
    i += n;
  }
  return tf;
}

void TrackFile::add(Track track) { tracks_.push_back(std::move(track)); }

std::optional<double> TrackFile::nearest_distance(double t, double x, double y) const {
  std::optional<double> best;
  for (const Track& track : tracks_) {
    if (track.samples.empty()) continue;
    if (t < track.samples.front().t || t > track.samples.back().t) continue;
    const auto it = std::lower_bound(
        track.samples.begin(), track.samples.end(), t,
        [](const TrackSample& s, double value) { return s.t < value; });
    double px, py;
    if (it->t == t || it == track.samples.begin()) {
      px = it->x;
      py = it->y;
    } else {
      const TrackSample& hi = *it;
      const TrackSample& lo = *(it - 1);
      const double w = (t - lo.t) / (hi.t - lo.t);
      px = lo.x + w * (hi.x - lo.x);
      py = lo.y + w * (hi.y - lo.y);
    }
    const double d = std::hypot(px - x, py - y);
    if (!best || d < *best) best = d;
  }
  return best;
}

DetectionLabel label_detection(const Junction& j, const TrackFile& tracks) {
  const auto d = tracks.nearest_distance(j.t, j.x, j.y);
  if (!d) return DetectionLabel::Ignore;
  if (*d <= kInnerCylinder) return DetectionLabel::TruePositive;
  if (*d <= kOuterCylinder) return DetectionLabel::FalsePositive;
  return DetectionLabel::Ignore;
}

NonDetectionLabel label_non_detection(const Event& e, const TrackFile& tracks) {
  const auto d = tracks.nearest_distance(e.t, e.x, e.y);
  if (!d) return NonDetectionLabel::Ignore;
  if (*d <= kInnerCylinder) return NonDetectionLabel::FalseNegative;
  if (*d <= kOuterCylinder) return NonDetectionLabel::TrueNegative;
  return NonDetectionLabel::Ignore;
}

EvalMetrics metrics(const ConfusionCounts& counts) {
  EvalMetrics m;
  if (counts.fp + counts.tn > 0) {
    m.fpr = static_cast<double>(counts.fp) / static_cast<double>(counts.fp + counts.tn);
  }
  if (counts.tp + counts.fp > 0) {
    m.accuracy =
        static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
  }
  return m;
}

std::string format_metrics_report(const ConfusionCounts& counts, const EvalMetrics& m,
                                  const std::string& scene_name) {
  std::ostringstream out;
  out << "scene = " << scene_name << '\n';
  out << "tp = " << counts.tp << '\n';
  out << "fp = " << counts.fp << '\n';
  out << "tn = " << counts.tn << '\n';
  out << "fn = " << counts.fn << '\n';
  char buf[64];
  if (m.fpr) {
    std::snprintf(buf, sizeof(buf), "%.6f", *m.fpr);
    out << "fpr = " << buf << '\n';
  } else {
    out << "fpr = undefined\n";
  }
  if (m.accuracy) {
    std::snprintf(buf, sizeof(buf), "%.6f", *m.accuracy);
    out << "accuracy = " << buf << '\n';
  } else {
    out << "accuracy = undefined\n";
  }
  out << "caveat = corner-derived tracks may include corners that are not junctions\n";
  return out.str();
}

}  // namespace eacj
