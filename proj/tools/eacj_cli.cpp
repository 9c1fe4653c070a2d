// Command-line frontend: detect / evaluate / estimate-p / synth.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eacj/eval.hpp"
#include "eacj/event_io.hpp"
#include "eacj/p_estimate.hpp"
#include "eacj/pipeline.hpp"
#include "eacj/synth.hpp"

namespace {

eacj::PipelineConfig load_pipeline_config(const std::string& config_path) {
  if (config_path.empty()) return eacj::PipelineConfig{};
  return eacj::PipelineConfig::from_config(eacj::Config::parse_file(config_path));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw eacj::IoError("cannot write report: " + path);
  out << text;
}

int run_detect(const std::string& config_path, const std::string& events_path,
               const std::string& scene_path, const std::string& out_path,
               bool no_prefilter, const std::string& overlay_path,
               const std::string& tail_cache, const std::string& report_path,
               const std::string& speedup_path) {
  eacj::PipelineConfig cfg = load_pipeline_config(config_path);
  if (no_prefilter) cfg.prefilter = false;

  std::vector<eacj::Event> events;
  if (!events_path.empty()) {
    events = eacj::load_event_file(events_path, cfg.sensor);
  } else {
    eacj::SceneSpec spec = eacj::load_scene_file(scene_path);
    cfg.sensor.width = spec.width;
    cfg.sensor.height = spec.height;
    eacj::SceneOutput scene = eacj::generate(spec);
    for (const std::string& w : scene.warnings) std::cerr << "warning: " << w << '\n';
    events = std::move(scene.events);
  }

  eacj::Pipeline pipeline(cfg, tail_cache);
  std::vector<eacj::Junction> junctions;
  const eacj::RunReport report = pipeline.run(events, junctions);
  eacj::write_junction_file(out_path, junctions);

  if (!overlay_path.empty()) {
    eacj::write_overlay_pgm(overlay_path, junctions, cfg.overlay_window, cfg.sensor);
  }
  if (!report_path.empty()) {
    write_text(report_path, report.format());
  } else {
    std::cout << report.format();
  }
  if (!speedup_path.empty()) {
    const eacj::SpeedupReport speedup = eacj::speedup_report(cfg, events);
    write_text(speedup_path, speedup.format());
  }
  return 0;
}

int run_evaluate(const std::string& junctions_path, const std::string& tracks_path,
                 const std::string& report_path, const std::string& events_path,
                 const std::string& config_path) {
  const eacj::PipelineConfig cfg = load_pipeline_config(config_path);
  const std::vector<eacj::Junction> junctions = eacj::load_junction_file(junctions_path);
  const eacj::TrackFile tracks = eacj::TrackFile::load(tracks_path);

  eacj::ConfusionCounts counts;
  for (const eacj::Junction& j : junctions) {
    switch (eacj::label_detection(j, tracks)) {
      case eacj::DetectionLabel::TruePositive:
        ++counts.tp;
        break;
      case eacj::DetectionLabel::FalsePositive:
        ++counts.fp;
        break;
      case eacj::DetectionLabel::Ignore:
        break;
    }
  }

  if (!events_path.empty()) {
    const std::vector<eacj::Event> events = eacj::load_event_file(events_path, cfg.sensor);
    // Non-detections: events that did not give rise to an emitted junction.
    std::size_t ji = 0;
    for (const eacj::Event& e : events) {
      while (ji < junctions.size() && junctions[ji].t < e.t - 1e-9) ++ji;
      bool detected = false;
      for (std::size_t k = ji; k < junctions.size() && junctions[k].t <= e.t + 1e-9; ++k) {
        if (junctions[k].x == e.x && junctions[k].y == e.y) {
          detected = true;
          break;
        }
      }
      if (detected) continue;
      switch (eacj::label_non_detection(e, tracks)) {
        case eacj::NonDetectionLabel::FalseNegative:
          ++counts.fn;
          break;
        case eacj::NonDetectionLabel::TrueNegative:
          ++counts.tn;
          break;
        case eacj::NonDetectionLabel::Ignore:
          break;
      }
    }
  }

  const eacj::EvalMetrics m = eacj::metrics(counts);
  const std::string text = eacj::format_metrics_report(counts, m, junctions_path);
  write_text(report_path, text);
  std::cout << text;
  if (events_path.empty()) {
    std::cout << "note: no --events given, FN/TN (and FPR) not computed\n";
  }
  return 0;
}

int run_estimate_p(const std::vector<std::string>& event_paths, long stride,
                   const std::string& config_path) {
  const eacj::PipelineConfig cfg = load_pipeline_config(config_path);
  eacj::PEstimateOptions opts;
  opts.radius = cfg.detector.r_max;
  opts.stride = static_cast<std::size_t>(stride);
  opts.count_scale = cfg.detector.binarize_count_scale;

  double max_p = 0.0;
  for (const std::string& path : event_paths) {
    const std::vector<eacj::Event> events = eacj::load_event_file(path, cfg.sensor);
    eacj::Gsae gsae(cfg.sensor.width, cfg.sensor.height);
    const double p = eacj::estimate_p(events, gsae, opts);
    max_p = std::max(max_p, p);
    std::printf("%s: p = %.6f  (%zu events)\n", path.c_str(), p, events.size());
  }
  std::printf("max_p = %.6f\n", max_p);
  return 0;
}

int run_synth(const std::string& scene_path, const std::string& out_events,
              const std::string& out_truth) {
  const eacj::SceneSpec spec = eacj::load_scene_file(scene_path);
  const eacj::SceneOutput out = eacj::generate(spec);
  for (const std::string& w : out.warnings) std::cerr << "warning: " << w << '\n';
  eacj::write_event_file(out_events, out.events);
  if (!out_truth.empty()) eacj::write_truth_file(out_truth, out.truth);
  std::printf("events = %zu\ntruth_records = %zu\n", out.events.size(), out.truth.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asynchronous a-contrario junction detection for event cameras"};
  app.require_subcommand(1);

  std::string config_path, events_path, scene_path, out_path, overlay_path;
  std::string tail_cache, report_path, speedup_path;
  bool no_prefilter = false;

  CLI::App* detect = app.add_subcommand("detect", "Run the detection pipeline");
  detect->add_option("--config", config_path, "Pipeline config file");
  auto* ev = detect->add_option("--events", events_path, "Input event file (t x y p)");
  auto* sc = detect->add_option("--scene", scene_path, "Scene spec to synthesize");
  ev->excludes(sc);
  detect->add_option("--out", out_path, "Output junction file")->required();
  detect->add_flag("--no-prefilter", no_prefilter, "Disable the candidate filter");
  detect->add_option("--overlay", overlay_path, "Write a PGM overlay of the last window");
  detect->add_option("--tail-cache", tail_cache, "Tail table cache file");
  detect->add_option("--report", report_path, "Write the run report here (default stdout)");
  detect->add_option("--speedup-report", speedup_path,
                     "Run twice (prefilter on/off) and write the timing comparison");

  std::string junctions_path, tracks_path, eval_report, eval_events, eval_config;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Label detections against tracks");
  evaluate->add_option("--junctions", junctions_path, "Junction file")->required();
  evaluate->add_option("--tracks", tracks_path, "Track file (track_id t x y)")->required();
  evaluate->add_option("--report", eval_report, "Metrics report path")->required();
  evaluate->add_option("--events", eval_events,
                       "Event file for FN/TN labeling (enables FPR)");
  evaluate->add_option("--config", eval_config, "Pipeline config (sensor size)");

  std::vector<std::string> estimate_paths;
  long stride = 1;
  std::string estimate_config;
  CLI::App* estimate = app.add_subcommand("estimate-p", "Estimate the gradient presence rate");
  estimate->add_option("--events", estimate_paths, "Event files (one per dataset)")
      ->required()
      ->expected(-1);
  estimate->add_option("--stride", stride, "Sample every N-th event")
      ->check(CLI::PositiveNumber);
  estimate->add_option("--config", estimate_config, "Pipeline config (sensor size)");

  std::string synth_scene, synth_events, synth_truth;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic event stream");
  synth->add_option("--scene", synth_scene, "Scene spec file")->required();
  synth->add_option("--out-events", synth_events, "Output event file")->required();
  synth->add_option("--out-truth", synth_truth, "Output ground truth file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (detect->parsed()) {
      if (events_path.empty() && scene_path.empty()) {
        std::cerr << "detect: one of --events or --scene is required\n";
        return 2;
      }
      return run_detect(config_path, events_path, scene_path, out_path, no_prefilter,
                        overlay_path, tail_cache, report_path, speedup_path);
    }
    if (evaluate->parsed()) {
      return run_evaluate(junctions_path, tracks_path, eval_report, eval_events,
                          eval_config);
    }
    if (estimate->parsed()) {
      return run_estimate_p(estimate_paths, stride, estimate_config);
    }
    if (synth->parsed()) {
      return run_synth(synth_scene, synth_events, synth_truth);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
