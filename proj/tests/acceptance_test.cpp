// Acceptance suite: one pass/fail line per criterion, exit code = #failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eacj/arc_filter.hpp"
#include "eacj/detector.hpp"
#include "eacj/eval.hpp"
#include "eacj/event_io.hpp"
#include "eacj/gamma_density.hpp"
#include "eacj/gsae.hpp"
#include "eacj/p_estimate.hpp"
#include "eacj/pipeline.hpp"
#include "eacj/synth.hpp"
#include "eacj/tail_table.hpp"
#include "oracles.hpp"

#ifndef EACJ_SCENE_DIR
#define EACJ_SCENE_DIR "scenes"
#endif

namespace {

using clock_type = std::chrono::steady_clock;

int g_failures = 0;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

void report(int criterion, bool pass, const std::string& what, double seconds,
            double limit) {
  const bool in_time = seconds < limit;
  const bool ok = pass && in_time;
  std::printf("[%s] criterion %d: %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), seconds, in_time ? "" : ", over time budget");
  if (!ok) ++g_failures;
}

std::string scene_path(const char* name) {
  return std::string(EACJ_SCENE_DIR) + "/" + name;
}

// ---------------------------------------------------------------- criterion 1
void criterion_density() {
  const auto start = clock_type::now();
  bool pass = true;
  std::ostringstream detail;
  for (double p : {0.05, 0.21, 0.5}) {
    const eacj::GammaDensity d(p);
    const double mass = d.total_mass();
    if (std::abs(mass - 1.0) > 1e-9) {
      pass = false;
      detail << " mass(p=" << p << ")=" << mass;
    }
    if (d.atom_mass() != 1.0 - p / 2.0) {
      pass = false;
      detail << " atom(p=" << p << ") off";
    }
  }
  report(1, pass, "density mass = 1 within 1e-9, atom = 1-p/2 exactly" + detail.str(),
         seconds_since(start), 1.0);
}

// ---------------------------------------------------------------- criterion 2
void criterion_tail_oracle() {
  const auto start = clock_type::now();
  const double p = 0.21;
  const eacj::GammaDensity d(p);
  bool pass = true;
  std::ostringstream detail;

  // closed form at J=1
  for (double t : {0.1, 0.3, 0.5}) {
    const double closed = p * (0.5 - (2.0 / oracles::kPi) * std::asin(t / std::sqrt(2.0)));
    const double got = eacj::tail_probability(t, 1, d);
    if (std::abs(got - closed) > 1e-4) {
      pass = false;
      detail << " closed-form t=" << t;
    }
  }

  for (int J : {1, 10, 50, 200}) {
    const double ts[3] = {0.1 * J, 0.3 * J, 0.5 * J};
    // one Monte Carlo pass per J, three thresholds counted together
    const long trials = 1000000;
    std::mt19937_64 rng(5000 + J);
    long hits[3] = {0, 0, 0};
    for (long i = 0; i < trials; ++i) {
      double omega = 0.0;
      for (int j = 0; j < J; ++j) omega += oracles::sample_gamma(p, rng);
      for (int k = 0; k < 3; ++k) hits[k] += (omega >= ts[k]);
    }
    for (int k = 0; k < 3; ++k) {
      const double exact = eacj::tail_probability(ts[k], J, d);
      const double mc = static_cast<double>(hits[k]) / trials;
      const double se = std::sqrt(exact * (1.0 - exact) / trials);
      if (std::abs(mc - exact) > 3.0 * se + 1e-12) {
        pass = false;
        detail << " J=" << J << ",t=" << ts[k] << " mc=" << mc << " exact=" << exact;
      }
    }
  }
  report(2, pass, "tails match Monte Carlo (1e6 draws) within 3 SE and the J=1 closed form" +
                      detail.str(),
         seconds_since(start), 60.0);
}

// ---------------------------------------------------------------- criterion 3
void criterion_brute_force() {
  const auto start = clock_type::now();
  const eacj::SectorCache sectors(3, 3, 64, 1.0);
  std::mt19937_64 rng(77);
  std::bernoulli_distribution bit(0.4);
  long mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    eacj::BinaryPatch b;
    b.radius = 3;
    b.bits.resize(49);
    for (auto& v : b.bits) v = bit(rng) ? 1 : 0;
    const eacj::GradientField g = eacj::gradient_field(b);
    for (int bin = 0; bin < 64; ++bin) {
      const auto [omega, J] = eacj::branch_strength(g, sectors.members(3, bin));
      int brute_j = 0;
      const double brute = oracles::brute_branch_strength(
          b, 3, oracles::kTwoPi * bin / 64.0, 1.0, &brute_j);
      if (omega != brute || J != brute_j) ++mismatches;
    }
  }
  std::ostringstream what;
  what << "branch_strength equals brute force exactly on 1000 random patches x 64 sectors"
       << (mismatches ? " (mismatches: " + std::to_string(mismatches) + ")" : "");
  report(3, mismatches == 0, what.str(), seconds_since(start), 10.0);
}

// ---------------------------------------------------------------- criterion 4
void criterion_synthetic_detection() {
  const auto start = clock_type::now();
  const eacj::SceneSpec spec = eacj::load_scene_file(scene_path("x_junction.scene"));
  const eacj::SceneOutput scene = eacj::generate(spec);

  eacj::PipelineConfig pcfg;
  const eacj::SectorCache sectors(pcfg.detector.r_min, pcfg.detector.r_max,
                                  pcfg.detector.theta_bins, pcfg.detector.tau);
  const eacj::GammaDensity density(pcfg.p);
  const eacj::TailTable table(density, sectors.distinct_sizes());
  const eacj::Detector detector(pcfg.detector, pcfg.nfa_config(), sectors, table);

  const double bin_width = oracles::kTwoPi / pcfg.detector.theta_bins;
  std::vector<double> truth_theta;
  for (const auto& b : spec.junctions[0].branches) truth_theta.push_back(b.orientation);

  const int windows = static_cast<int>(std::ceil(spec.duration / 0.001));
  std::vector<int> event_count(windows, 0);
  std::vector<char> good(windows, 0);
  eacj::Gsae gsae(spec.width, spec.height);
  for (const eacj::Event& e : scene.events) {
    gsae.update(e);
    const int w = std::min(windows - 1, static_cast<int>(e.t / 0.001));
    ++event_count[w];
    if (good[w]) continue;
    const eacj::TimestampPatch small = gsae.extract(e.x, e.y, pcfg.filter.outer_radius);
    if (!eacj::is_candidate(small, pcfg.filter)) continue;
    const auto j = detector.detect(e, gsae);
    if (!j) continue;
    const double cx = spec.junctions[0].cx + spec.vx * e.t;
    const double cy = spec.junctions[0].cy + spec.vy * e.t;
    if (std::hypot(j->x - cx, j->y - cy) > 2.0) continue;
    if (j->branches.size() != 4) continue;
    bool used[4] = {false, false, false, false};
    bool ok = true;
    for (const eacj::Branch& b : j->branches) {
      bool matched = false;
      for (int k = 0; k < 4; ++k) {
        if (!used[k] && eacj::angle_distance(b.theta, truth_theta[k]) <= bin_width + 1e-9) {
          used[k] = true;
          matched = true;
          break;
        }
      }
      if (!matched || b.r < 10) {
        ok = false;
        break;
      }
    }
    if (ok) good[w] = 1;
  }

  int qualifying = 0;
  int hit = 0;
  for (int w = 0; w < windows; ++w) {
    if (event_count[w] >= 20) {
      ++qualifying;
      hit += good[w];
    }
  }
  const double rate = qualifying ? static_cast<double>(hit) / qualifying : 0.0;
  std::ostringstream what;
  what << "X-junction scene: " << hit << "/" << qualifying
       << " qualifying 1 ms windows with a centered M=4 detection (" << 100.0 * rate
       << "%, need >= 90%)";
  report(4, qualifying >= 100 && rate >= 0.90, what.str(), seconds_since(start), 120.0);
}

// ---------------------------------------------------------------- criterion 5
void criterion_noise_control() {
  const auto start = clock_type::now();
  long total_calibrated = 0;
  long total_fixed = 0;
  long total_events = 0;
  double min_p = 1.0, max_p = 0.0;

  eacj::PipelineConfig fixed_cfg;  // p = 0.21
  eacj::Pipeline fixed_pipeline(fixed_cfg);

  for (int s = 0; s < 10; ++s) {
    eacj::SceneSpec spec;
    spec.width = 240;
    spec.height = 180;
    spec.duration = 1.0;
    spec.noise_rate = 100000.0 / (240.0 * 180.0);  // ~1e5 events
    spec.seed = 9000 + s;
    const eacj::SceneOutput scene = eacj::generate(spec);
    total_events += static_cast<long>(scene.events.size());

    // the calibration route: estimate p from the stream, keep the bigger of
    // the measured value and the default
    eacj::Gsae calib(spec.width, spec.height);
    eacj::PEstimateOptions opts;
    opts.stride = 20;
    const double measured = eacj::estimate_p(scene.events, calib, opts);
    const double p_used = std::max(measured, 0.21);
    min_p = std::min(min_p, measured);
    max_p = std::max(max_p, measured);

    eacj::PipelineConfig cfg;
    cfg.p = p_used;
    eacj::Pipeline pipeline(cfg);
    std::vector<eacj::Junction> out;
    pipeline.run(scene.events, out);
    total_calibrated += static_cast<long>(out.size());

    std::vector<eacj::Junction> out_fixed;
    fixed_pipeline.run(scene.events, out_fixed);
    total_fixed += static_cast<long>(out_fixed.size());
  }
  const double mean = total_calibrated / 10.0;
  std::ostringstream what;
  what << "noise-only streams (" << total_events / 10 << " events each): mean "
       << mean << " accepted junctions at eps=1 with stream-calibrated p in ["
       << min_p << ", " << max_p << "] (need <= 2; fixed p=0.21 gives "
       << total_fixed / 10.0 << ", informational)";
  report(5, mean <= 2.0, what.str(), seconds_since(start), 300.0);
}

// ---------------------------------------------------------------- criterion 6
void criterion_refinement_postcondition() {
  const auto start = clock_type::now();
  namespace fs = std::filesystem;

  // a real run: the bundled X scene through the full pipeline, then an
  // exhaustive pairwise scan of the output file
  const eacj::SceneSpec spec = eacj::load_scene_file(scene_path("x_junction.scene"));
  const eacj::SceneOutput scene = eacj::generate(spec);
  eacj::PipelineConfig cfg;
  eacj::Pipeline pipeline(cfg);
  std::vector<eacj::Junction> out;
  pipeline.run(scene.events, out);
  const fs::path path = fs::temp_directory_path() / "eacj_acc_refine.txt";
  eacj::write_junction_file(path.string(), out);
  const std::vector<eacj::Junction> emitted = eacj::load_junction_file(path.string());
  fs::remove(path);

  long violations = 0;
  for (std::size_t a = 0; a < emitted.size(); ++a) {
    for (std::size_t b = a + 1; b < emitted.size(); ++b) {
      const double dx = emitted[a].x - emitted[b].x;
      const double dy = emitted[a].y - emitted[b].y;
      if (dx * dx + dy * dy <= cfg.refine.radius * cfg.refine.radius &&
          std::abs(emitted[a].t - emitted[b].t) <= 0.005) {
        ++violations;
      }
    }
  }
  std::ostringstream what;
  what << "no two of " << emitted.size()
       << " emitted junctions share a (r_d, 0.005 s) cell (violations: " << violations
       << ")";
  report(6, !emitted.empty() && violations == 0, what.str(), seconds_since(start), 120.0);
}

// ---------------------------------------------------------------- criterion 7
void criterion_metrics() {
  const auto start = clock_type::now();
  bool pass = true;
  const eacj::EvalMetrics a = eacj::metrics({0, 1, 99, 0});
  pass = pass && a.fpr.has_value() && *a.fpr == 0.01;
  const eacj::EvalMetrics b = eacj::metrics({72, 27, 0, 0});
  pass = pass && b.accuracy.has_value() && *b.accuracy == 72.0 / 99.0;
  const eacj::EvalMetrics c = eacj::metrics({5, 15, 60, 20});
  pass = pass && c.fpr.has_value() && *c.fpr == 15.0 / 75.0;
  pass = pass && c.accuracy.has_value() && *c.accuracy == 5.0 / 20.0;
  const eacj::EvalMetrics u = eacj::metrics({0, 0, 0, 3});
  pass = pass && !u.fpr.has_value() && !u.accuracy.has_value();
  report(7, pass, "confusion fixtures reproduce FPR = FP/(FP+TN) and accuracy = TP/(TP+FP)",
         seconds_since(start), 10.0);
}

// ---------------------------------------------------------------- criterion 8
void criterion_prefilter() {
  const auto start = clock_type::now();
  const eacj::SceneSpec spec = eacj::load_scene_file(scene_path("textured.scene"));
  const eacj::SceneOutput scene = eacj::generate(spec);
  eacj::PipelineConfig cfg;
  cfg.sensor = {spec.width, spec.height};
  const eacj::SpeedupReport r = eacj::speedup_report(cfg, scene.events);
  std::ostringstream what;
  what << "prefilter on the textured scene: invocation ratio " << r.invocation_ratio()
       << " (need <= 0.30), wall " << r.wall_with << " s vs " << r.wall_without
       << " s, speedup x" << r.wall_ratio() << " (~10x claim informational)";
  report(8, r.invocation_ratio() <= 0.30 && r.wall_with < r.wall_without, what.str(),
         seconds_since(start), 120.0);
}

// ---------------------------------------------------------------- criterion 9
void criterion_determinism() {
  const auto start = clock_type::now();
  namespace fs = std::filesystem;
  const eacj::SceneSpec spec = eacj::load_scene_file(scene_path("textured.scene"));
  const eacj::SceneOutput scene = eacj::generate(spec);
  eacj::PipelineConfig cfg;
  cfg.sensor = {spec.width, spec.height};

  auto run_to_file = [&](const fs::path& path) {
    eacj::Pipeline pipeline(cfg);
    std::vector<eacj::Junction> out;
    pipeline.run(scene.events, out);
    eacj::write_junction_file(path.string(), out);
  };
  const fs::path a = fs::temp_directory_path() / "eacj_acc_det_a.txt";
  const fs::path b = fs::temp_directory_path() / "eacj_acc_det_b.txt";
  run_to_file(a);
  run_to_file(b);
  auto slurp = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ta = slurp(a), tb = slurp(b);
  fs::remove(a);
  fs::remove(b);
  std::ostringstream what;
  what << "two identical runs produce byte-identical junction files (" << ta.size()
       << " bytes)";
  report(9, !ta.empty() && ta == tb, what.str(), seconds_since(start), 120.0);
}

}  // namespace

int main() {
  criterion_density();
  criterion_tail_oracle();
  criterion_brute_force();
  criterion_synthetic_detection();
  criterion_noise_control();
  criterion_refinement_postcondition();
  criterion_metrics();
  criterion_prefilter();
  criterion_determinism();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criterion(s) failed\n", g_failures);
  }
  return g_failures;
}
