#include "eacj/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace eacj {

PipelineConfig PipelineConfig::from_config(const Config& cfg) {
  PipelineConfig pc;
  pc.sensor.width = cfg.get_int("sensor.width", pc.sensor.width);
  pc.sensor.height = cfg.get_int("sensor.height", pc.sensor.height);

  pc.prefilter = cfg.get_bool("filter.enabled", pc.prefilter);
  pc.filter.inner_radius = cfg.get_int("filter.inner_radius", pc.filter.inner_radius);
  pc.filter.outer_radius = cfg.get_int("filter.outer_radius", pc.filter.outer_radius);
  const auto inner_arc = cfg.get_ints("filter.inner_arc",
                                      {pc.filter.inner_arc.min_len, pc.filter.inner_arc.max_len});
  const auto outer_arc = cfg.get_ints("filter.outer_arc",
                                      {pc.filter.outer_arc.min_len, pc.filter.outer_arc.max_len});
  if (inner_arc.size() != 2 || outer_arc.size() != 2) {
    throw ConfigError("filter.inner_arc / filter.outer_arc need two integers (min max)");
  }
  pc.filter.inner_arc = {inner_arc[0], inner_arc[1]};
  pc.filter.outer_arc = {outer_arc[0], outer_arc[1]};

  pc.p = cfg.get_double("acj.p", pc.p);
  pc.epsilon = cfg.get_double("acj.epsilon", pc.epsilon);
  pc.grid_step = cfg.get_double("acj.grid_step", pc.grid_step);
  pc.detector.tau = cfg.get_double("acj.tau", pc.detector.tau);
  pc.detector.r_min = cfg.get_int("acj.r_min", pc.detector.r_min);
  pc.detector.r_max = cfg.get_int("acj.r_max", pc.detector.r_max);
  pc.detector.theta_bins = cfg.get_int("acj.theta_bins", pc.detector.theta_bins);
  pc.detector.max_branches = cfg.get_int("acj.max_branches", pc.detector.max_branches);
  pc.detector.maxima_window =
      cfg.get_int("acj.maxima_window", std::max(1, pc.detector.theta_bins / 16));
  pc.detector.binarize_count_scale =
      cfg.get_double("acj.binarize_count_scale", pc.detector.binarize_count_scale);
  pc.orientation_count = cfg.get_int("acj.orientations", 0);

  pc.refine.radius = cfg.get_double("refine.r_d", pc.refine.radius);
  pc.refine.window = cfg.get_double("refine.T", pc.refine.window);
  pc.overlay_window = cfg.get_double("overlay.window", pc.overlay_window);
  pc.validate();
  return pc;
}

NfaConfig PipelineConfig::nfa_config() const {
  NfaConfig nc;
  nc.epsilon = epsilon;
  nc.image_area = sensor.area();
  nc.scale_count = detector.r_max - detector.r_min + 1;
  nc.orientation_count = orientation_count > 0 ? orientation_count : detector.theta_bins;
  nc.max_branches = detector.max_branches;
  return nc;
}

void PipelineConfig::validate() const {
  if (sensor.width <= 0 || sensor.height <= 0) {
    throw ConfigError("sensor size must be positive");
  }
  filter.validate();
  detector.validate();
  refine.validate();
  nfa_config().validate();
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("acj.p must lie in (0,1)");
  if (!(overlay_window > 0.0)) throw ConfigError("overlay.window must be positive");
}

Pipeline::Pipeline(const PipelineConfig& cfg) : cfg_(cfg) { build(""); }

Pipeline::Pipeline(const PipelineConfig& cfg, const std::string& tail_cache_path)
    : cfg_(cfg) {
  build(tail_cache_path);
}

void Pipeline::build(const std::string& tail_cache_path) {
  cfg_.validate();
  sectors_ = std::make_unique<SectorCache>(cfg_.detector.r_min, cfg_.detector.r_max,
                                           cfg_.detector.theta_bins, cfg_.detector.tau);
  density_ = std::make_unique<GammaDensity>(cfg_.p, cfg_.grid_step);
  const std::vector<int> sizes = sectors_->distinct_sizes();
  if (sizes.empty()) throw ConfigError("sector cache is empty; tau too small?");
  if (!tail_cache_path.empty()) {
    if (auto cached = TailTable::load(tail_cache_path, cfg_.p, cfg_.grid_step, sizes)) {
      table_ = std::make_unique<TailTable>(std::move(*cached));
    }
  }
  if (!table_) {
    table_ = std::make_unique<TailTable>(*density_, sizes);
    if (!tail_cache_path.empty()) table_->save(tail_cache_path);
  }
  detector_ = std::make_unique<Detector>(cfg_.detector, cfg_.nfa_config(), *sectors_,
                                         *table_);
}

RunReport Pipeline::run(const std::vector<Event>& events,
                        std::vector<Junction>& out) const {
  using clock = std::chrono::steady_clock;
  RunReport report;
  out.clear();
  Gsae gsae(cfg_.sensor.width, cfg_.sensor.height);
  Refiner refiner(cfg_.refine);

  const auto t_start = clock::now();
  auto seconds_since = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
  };

  double last_t = 0.0;
  bool first = true;
  for (const Event& e : events) {
    if (!first && e.t < last_t) {
      throw ParameterError("pipeline: events not in timestamp order");
    }
    first = false;
    last_t = e.t;
    ++report.events;
    gsae.update(e);

    bool candidate = true;
    if (cfg_.prefilter) {
      const auto f0 = clock::now();
      const TimestampPatch patch = gsae.extract(e.x, e.y, cfg_.filter.outer_radius);
      candidate = is_candidate(patch, cfg_.filter);
      report.filter_seconds += seconds_since(f0, clock::now());
    }
    if (!candidate) continue;
    ++report.candidates;

    const auto d0 = clock::now();
    const std::optional<Junction> j = detector_->detect(e, gsae);
    report.detect_seconds += seconds_since(d0, clock::now());
    if (!j) continue;
    ++report.detections;

    const auto r0 = clock::now();
    Refiner::Outcome outcome = refiner.offer(*j);
    for (Junction& fin : outcome.finalized) out.push_back(std::move(fin));
    report.refine_seconds += seconds_since(r0, clock::now());
  }
  for (Junction& fin : refiner.finish()) out.push_back(std::move(fin));
  report.emitted = out.size();
  report.total_seconds = seconds_since(t_start, clock::now());
  return report;
}

std::string RunReport::format() const {
  std::ostringstream s;
  s << "events = " << events << '\n';
  s << "candidates = " << candidates << '\n';
  s << "detections = " << detections << '\n';
  s << "emitted = " << emitted << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", filter_seconds);
  s << "filter_seconds = " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.6f", detect_seconds);
  s << "detect_seconds = " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.6f", refine_seconds);
  s << "refine_seconds = " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.6f", total_seconds);
  s << "total_seconds = " << buf << '\n';
  return s.str();
}

std::string format_junction(const Junction& j) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.9f %d %d %.6e %zu", j.t, j.x, j.y, j.nfa,
                j.branches.size());
  std::string line = buf;
  for (const Branch& b : j.branches) {
    std::snprintf(buf, sizeof(buf), " %d %.6f", b.r, b.theta);
    line += buf;
  }
  return line;
}

void write_junction_file(const std::string& path,
                         const std::vector<Junction>& junctions) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write junction file: " + path);
  for (const Junction& j : junctions) out << format_junction(j) << '\n';
}

std::vector<Junction> load_junction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open junction file: " + path);
  std::vector<Junction> junctions;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    std::istringstream ss(line);
    Junction j;
    std::size_t m = 0;
    if (!(ss >> j.t >> j.x >> j.y >> j.nfa >> m) || m < 2) {
      throw ParseError("junction line " + std::to_string(line_number) + ": malformed");
    }
    for (std::size_t i = 0; i < m; ++i) {
      Branch b;
      if (!(ss >> b.r >> b.theta)) {
        throw ParseError("junction line " + std::to_string(line_number) +
                         ": missing branch fields");
      }
      j.branches.push_back(b);
    }
    junctions.push_back(std::move(j));
  }
  return junctions;
}

void write_overlay_pgm(const std::string& path, const std::vector<Junction>& junctions,
                       double window, const SensorGeometry& sensor) {
  if (!(window > 0.0)) throw ParameterError("overlay: window must be positive");
  std::vector<std::uint8_t> image(
      static_cast<std::size_t>(sensor.width) * sensor.height, 0);
  auto put = [&](int x, int y, std::uint8_t v) {
    if (!sensor.contains(x, y)) return;
    std::uint8_t& cell = image[static_cast<std::size_t>(y) * sensor.width + x];
    cell = std::max(cell, v);
  };

  double t_end = 0.0;
  for (const Junction& j : junctions) t_end = std::max(t_end, j.t);
  for (const Junction& j : junctions) {
    if (j.t < t_end - window) continue;
    for (const Branch& b : j.branches) {
      // Ray of length r along theta, y axis pointing down.
      const double dx = std::cos(b.theta);
      const double dy = -std::sin(b.theta);
      const int steps = 2 * b.r;
      for (int s = 0; s <= steps; ++s) {
        const double f = static_cast<double>(s) / steps * b.r;
        put(j.x + static_cast<int>(std::lround(f * dx)),
            j.y + static_cast<int>(std::lround(f * dy)), 180);
      }
    }
    put(j.x, j.y, 255);
  }

  std::ofstream out(path);
  if (!out) throw IoError("cannot write overlay: " + path);
  out << "P2\n" << sensor.width << ' ' << sensor.height << "\n255\n";
  for (int y = 0; y < sensor.height; ++y) {
    for (int x = 0; x < sensor.width; ++x) {
      out << static_cast<int>(image[static_cast<std::size_t>(y) * sensor.width + x]);
      out << (x + 1 == sensor.width ? '\n' : ' ');
    }
  }
}

double SpeedupReport::invocation_ratio() const {
  if (invocations_without == 0) return 1.0;
  return static_cast<double>(invocations_with) /
         static_cast<double>(invocations_without);
}

double SpeedupReport::wall_ratio() const {
  if (wall_with <= 0.0) return 1.0;
  return wall_without / wall_with;
}

std::string SpeedupReport::format() const {
  std::ostringstream s;
  s << "events = " << events << '\n';
  s << "detector_invocations_with_prefilter = " << invocations_with << '\n';
  s << "detector_invocations_without_prefilter = " << invocations_without << '\n';
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", invocation_ratio());
  s << "invocation_ratio = " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.6f", wall_with);
  s << "wall_seconds_with_prefilter = " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.6f", wall_without);
  s << "wall_seconds_without_prefilter = " << buf << '\n';
  std::snprintf(buf, sizeof(buf), "%.2f", wall_ratio());
  s << "speedup = " << buf << "  # wall clock, hardware-dependent\n";
  return s.str();
}

SpeedupReport speedup_report(const PipelineConfig& cfg,
                             const std::vector<Event>& events) {
  SpeedupReport report;
  report.events = events.size();

  PipelineConfig with = cfg;
  with.prefilter = true;
  Pipeline pipeline_with(with);
  std::vector<Junction> sink;
  const RunReport run_with = pipeline_with.run(events, sink);
  report.invocations_with = run_with.candidates;
  report.wall_with = run_with.total_seconds;

  PipelineConfig without = cfg;
  without.prefilter = false;
  Pipeline pipeline_without(without);
  const RunReport run_without = pipeline_without.run(events, sink);
  report.invocations_without = run_without.candidates;
  report.wall_without = run_without.total_seconds;
  return report;
}

}  // namespace eacj
