#pragma once

#include <memory>
#include <string>
#include <vector>

#include "eacj/arc_filter.hpp"
#include "eacj/config.hpp"
#include "eacj/detector.hpp"
#include "eacj/refine.hpp"

namespace eacj {

struct PipelineConfig {
  SensorGeometry sensor;
  bool prefilter = true;
  FilterConfig filter;
  DetectorConfig detector;
  double p = 0.21;
  double grid_step = GammaDensity::kDefaultGridStep;
  double epsilon = 1.0;
  int orientation_count = 0;  // 0: follow detector.theta_bins
  RefineConfig refine;
  double overlay_window = 0.05;  // seconds

  static PipelineConfig from_config(const Config& cfg);
  NfaConfig nfa_config() const;
  void validate() const;
};

struct RunReport {
  std::uint64_t events = 0;
  std::uint64_t candidates = 0;   // events passed to the full detector
  std::uint64_t detections = 0;   // detector hits before refinement
  std::uint64_t emitted = 0;      // junctions surviving refinement
  double filter_seconds = 0.0;
  double detect_seconds = 0.0;
  double refine_seconds = 0.0;
  double total_seconds = 0.0;

  std::string format() const;
};

/// Ingest -> G-SAE update -> candidate filter -> detector -> refinement, in
/// strict timestamp order. Holds the precomputed statistical tables; reusable
/// across runs.
class Pipeline {
 public:
  explicit Pipeline(const PipelineConfig& cfg);
  Pipeline(const PipelineConfig& cfg, const std::string& tail_cache_path);

  RunReport run(const std::vector<Event>& events, std::vector<Junction>& out) const;

  const PipelineConfig& config() const { return cfg_; }
  const TailTable& table() const { return *table_; }
  const SectorCache& sectors() const { return *sectors_; }

 private:
  void build(const std::string& tail_cache_path);

  PipelineConfig cfg_;
  std::unique_ptr<SectorCache> sectors_;
  std::unique_ptr<GammaDensity> density_;
  std::unique_ptr<TailTable> table_;
  std::unique_ptr<Detector> detector_;
};

// Junction stream: one line per junction, "t x y nfa M (r theta) x M",
// angles in radians to 6 decimals.
std::string format_junction(const Junction& j);
void write_junction_file(const std::string& path, const std::vector<Junction>& junctions);
std::vector<Junction> load_junction_file(const std::string& path);

/// Text PGM raster with junction centers marked and branch rays of length
/// r_i drawn along theta_i, for junctions within the trailing `window`
/// seconds of the stream.
void write_overlay_pgm(const std::string& path, const std::vector<Junction>& junctions,
                       double window, const SensorGeometry& sensor);

struct SpeedupReport {
  std::uint64_t events = 0;
  std::uint64_t invocations_with = 0;
  std::uint64_t invocations_without = 0;
  double wall_with = 0.0;
  double wall_without = 0.0;

  double invocation_ratio() const;
  double wall_ratio() const;  // without / with: the speed-up factor
  std::string format() const;
};

/// Runs the same events twice, with and without the prefilter.
SpeedupReport speedup_report(const PipelineConfig& cfg, const std::vector<Event>& events);

}  // namespace eacj
