#include "eacj/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "eacj/config.hpp"

namespace eacj {

namespace {

int expected_branch_count(const std::string& type) {
  if (type == "L") return 2;
  if (type == "Y" || type == "T") return 3;
  if (type == "X") return 4;
  return -1;
}

}  // namespace

void SceneSpec::validate() const {
  if (width <= 0 || height <= 0) throw ParameterError("scene: non-positive sensor size");
  if (!(duration > 0.0)) throw ParameterError("scene: duration must be positive");
  if (noise_rate < 0.0) throw ParameterError("scene: negative noise rate");
  if (events_per_crossing < 1) throw ParameterError("scene: events per crossing must be >= 1");
  if (burst_duration < 0.0) throw ParameterError("scene: negative burst duration");
  if (!(truth_interval > 0.0)) throw ParameterError("scene: truth interval must be positive");
  for (std::size_t i = 0; i < junctions.size(); ++i) {
    const JunctionTemplate& j = junctions[i];
    if (!j.type.empty()) {
      const int want = expected_branch_count(j.type);
      if (want < 0) {
        throw ParameterError("scene: junction " + std::to_string(i) + ": unknown type '" +
                             j.type + "'");
      }
      if (static_cast<int>(j.branches.size()) != want) {
        throw ParameterError("scene: junction " + std::to_string(i) + ": type " + j.type +
                             " requires " + std::to_string(want) + " branches, got " +
                             std::to_string(j.branches.size()));
      }
    }
    if (j.branches.size() < 2) {
      throw ParameterError("scene: junction " + std::to_string(i) + ": needs >= 2 branches");
    }
    for (const BranchTemplate& b : j.branches) {
      if (!(b.length >= 3.0)) {
        throw ParameterError("scene: junction " + std::to_string(i) +
                             ": branch lengths must be >= 3 px");
      }
    }
  }
}

SceneOutput generate(const SceneSpec& spec) {
  spec.validate();
  SceneOutput out;

  const bool moving = spec.vx != 0.0 || spec.vy != 0.0;
  if (!moving && !spec.junctions.empty() && spec.noise_rate == 0.0) {
    out.warnings.push_back("static scene without noise: no structural events will fire");
  }

  // Structural events: exact edge-crossing times per pixel. A branch is the
  // segment center -> center + length * (cos theta, -sin theta), translating
  // at (vx, vy); pixel q is crossed at the unique (t, s) solving
  // q = c0 + v t + s dir.
  if (moving) {
    for (const JunctionTemplate& j : spec.junctions) {
      for (const BranchTemplate& b : j.branches) {
        const double dirx = std::cos(b.orientation);
        const double diry = -std::sin(b.orientation);
        const double det = spec.vx * diry - spec.vy * dirx;
        if (std::abs(det) < 1e-9) {
          out.warnings.push_back("branch parallel to velocity emits no events");
          continue;
        }
        const int polarity = det > 0.0 ? +1 : -1;
        // Bounding box of the swept parallelogram.
        const double xs[4] = {j.cx, j.cx + b.length * dirx, j.cx + spec.vx * spec.duration,
                              j.cx + spec.vx * spec.duration + b.length * dirx};
        const double ys[4] = {j.cy, j.cy + b.length * diry, j.cy + spec.vy * spec.duration,
                              j.cy + spec.vy * spec.duration + b.length * diry};
        const int x0 = std::max(0, static_cast<int>(std::floor(*std::min_element(xs, xs + 4))) - 1);
        const int x1 = std::min(spec.width - 1,
                                static_cast<int>(std::ceil(*std::max_element(xs, xs + 4))) + 1);
        const int y0 = std::max(0, static_cast<int>(std::floor(*std::min_element(ys, ys + 4))) - 1);
        const int y1 = std::min(spec.height - 1,
                                static_cast<int>(std::ceil(*std::max_element(ys, ys + 4))) + 1);
        for (int py = y0; py <= y1; ++py) {
          for (int px = x0; px <= x1; ++px) {
            const double qx = px - j.cx;
            const double qy = py - j.cy;
            const double t = (qx * diry - qy * dirx) / det;
            const double s = (spec.vx * qy - spec.vy * qx) / det;
            if (t < 0.0 || t > spec.duration) continue;
            if (s < 0.0 || s > b.length) continue;
            const int k = spec.events_per_crossing;
            for (int i = 0; i < k; ++i) {
              double tb = (k == 1) ? t
                                   : t - spec.burst_duration / 2.0 +
                                         spec.burst_duration * (i + 0.5) / k;
              tb = std::clamp(tb, 0.0, spec.duration);
              out.events.push_back({tb, px, py, polarity});
            }
          }
        }
      }
    }
  }

  // Uniform background noise, seeded.
  if (spec.noise_rate > 0.0) {
    std::mt19937_64 rng(spec.seed);
    const double lambda =
        spec.noise_rate * static_cast<double>(spec.width) * spec.height * spec.duration;
    std::poisson_distribution<long long> count_dist(lambda);
    const long long count = count_dist(rng);
    std::uniform_real_distribution<double> time_dist(0.0, spec.duration);
    std::uniform_int_distribution<int> x_dist(0, spec.width - 1);
    std::uniform_int_distribution<int> y_dist(0, spec.height - 1);
    std::bernoulli_distribution pol_dist(0.5);
    for (long long i = 0; i < count; ++i) {
      const double t = time_dist(rng);
      const int x = x_dist(rng);
      const int y = y_dist(rng);
      out.events.push_back({t, x, y, pol_dist(rng) ? +1 : -1});
    }
  }

  std::sort(out.events.begin(), out.events.end(), [](const Event& a, const Event& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.y != b.y) return a.y < b.y;
    if (a.x != b.x) return a.x < b.x;
    return a.p < b.p;
  });

  // Truth sampled at fixed intervals, one record per junction per instant in
  // template order.
  for (double t = 0.0; t <= spec.duration + 1e-12; t += spec.truth_interval) {
    const double tt = std::min(t, spec.duration);
    for (const JunctionTemplate& j : spec.junctions) {
      GroundTruthRecord rec;
      rec.t = tt;
      rec.cx = j.cx + spec.vx * tt;
      rec.cy = j.cy + spec.vy * tt;
      rec.branches = j.branches;
      out.truth.push_back(rec);
    }
  }
  return out;
}

GroundTruthRecord truth_at(const std::vector<GroundTruthRecord>& records, double t) {
  if (records.empty()) throw ParameterError("truth_at: no records");
  if (t < records.front().t || t > records.back().t) {
    throw RangeError("truth_at: t=" + std::to_string(t) + " outside sampled span [" +
                     std::to_string(records.front().t) + ", " +
                     std::to_string(records.back().t) + "]");
  }
  const auto it = std::lower_bound(
      records.begin(), records.end(), t,
      [](const GroundTruthRecord& r, double value) { return r.t < value; });
  if (it == records.begin() || it->t == t) return *it;
  const GroundTruthRecord& hi = *it;
  const GroundTruthRecord& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);
  GroundTruthRecord rec = lo;
  rec.t = t;
  rec.cx = lo.cx + w * (hi.cx - lo.cx);
  rec.cy = lo.cy + w * (hi.cy - lo.cy);
  return rec;
}

SceneSpec load_scene_file(const std::string& path) {
  Config cfg = Config::parse_file(path);
  SceneSpec spec;
  spec.width = cfg.get_int("sensor.width", spec.width);
  spec.height = cfg.get_int("sensor.height", spec.height);
  spec.duration = cfg.get_double("scene.duration", spec.duration);
  const auto velocity = cfg.get_doubles("scene.velocity", {0.0, 0.0});
  if (velocity.size() != 2) throw ConfigError(path + ": scene.velocity needs two numbers");
  spec.vx = velocity[0];
  spec.vy = velocity[1];
  spec.noise_rate = cfg.get_double("scene.noise_rate", spec.noise_rate);
  spec.seed = static_cast<std::uint64_t>(cfg.get_int("scene.seed", 0));
  spec.events_per_crossing =
      cfg.get_int("scene.events_per_crossing", spec.events_per_crossing);
  spec.burst_duration = cfg.get_double("scene.burst_duration", spec.burst_duration);
  spec.truth_interval = cfg.get_double("scene.truth_interval", spec.truth_interval);

  for (int i = 0;; ++i) {
    const std::string prefix = "junction." + std::to_string(i) + ".";
    if (!cfg.has(prefix + "center")) break;
    JunctionTemplate j;
    j.type = cfg.get_string(prefix + "type", "");
    const auto center = cfg.get_doubles(prefix + "center", {});
    if (center.size() != 2) throw ConfigError(path + ": " + prefix + "center needs two numbers");
    j.cx = center[0];
    j.cy = center[1];
    const auto orientations = cfg.get_doubles(prefix + "orientations", {});
    const auto lengths = cfg.get_doubles(prefix + "lengths", {});
    if (orientations.empty() || orientations.size() != lengths.size()) {
      throw ConfigError(path + ": " + prefix +
                        "orientations and lengths must be equal-length lists");
    }
    for (std::size_t b = 0; b < orientations.size(); ++b) {
      j.branches.push_back({lengths[b], orientations[b]});
    }
    spec.junctions.push_back(std::move(j));
  }
  spec.validate();
  return spec;
}

void write_truth_file(const std::string& path,
                      const std::vector<GroundTruthRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write truth file: " + path);
  char buf[128];
  for (const GroundTruthRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%.9f %.4f %.4f %zu", r.t, r.cx, r.cy,
                  r.branches.size());
    out << buf;
    for (const BranchTemplate& b : r.branches) {
      std::snprintf(buf, sizeof(buf), " %.4f %.6f", b.length, b.orientation);
      out << buf;
    }
    out << '\n';
  }
}

std::vector<GroundTruthRecord> load_truth_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open truth file: " + path);
  std::vector<GroundTruthRecord> records;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream ss(line);
    GroundTruthRecord r;
    std::size_t m = 0;
    if (!(ss >> r.t >> r.cx >> r.cy >> m)) {
      throw ParseError("truth line " + std::to_string(line_number) + ": malformed header");
    }
    for (std::size_t i = 0; i < m; ++i) {
      BranchTemplate b;
      if (!(ss >> b.length >> b.orientation)) {
        throw ParseError("truth line " + std::to_string(line_number) +
                         ": missing branch fields");
      }
      r.branches.push_back(b);
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace eacj
