#pragma once

#include <optional>
#include <vector>

#include "eacj/gradient.hpp"
#include "eacj/gsae.hpp"
#include "eacj/sector.hpp"
#include "eacj/tail_table.hpp"

namespace eacj {

struct Branch {
  int r = 0;            // scale, pixels
  double theta = 0.0;   // orientation, radians in [0, 2pi)
  double strength = 0.0;
  double tail = 1.0;    // F(strength; J(r, theta)) under the null
};

struct Junction {
  int x = 0;
  int y = 0;
  double t = 0.0;
  std::vector<Branch> branches;
  double strength = 0.0;  // min branch strength
  double nfa = 0.0;
};

struct DetectorConfig {
  double tau = 1.0;
  int r_min = 3;
  int r_max = 15;
  int theta_bins = 64;
  int max_branches = 4;
  int maxima_window = 4;  // semi-local maximum half-window, bins
  double binarize_count_scale = 1.0;

  void validate() const;
};

/// Sum of gamma_alignment over the sector members; returns (omega, J) where
/// J is the member count. Summation follows the member list order.
std::pair<double, int> branch_strength(const GradientField& g,
                                       const std::vector<SectorMember>& members);

/// omega(r, theta_k) for every orientation bin.
std::vector<double> orientation_profile(const GradientField& g,
                                        const SectorCache& sectors, int r);

/// Bins strictly greater than every other bin within +-window (circular) and
/// strictly positive. Plateau ties keep the lowest bin index.
std::vector<int> semi_local_maxima(const std::vector<double>& profile, int window);

/// Over r in [r_min, r_max], the scale minimizing the null tail of
/// omega(r, theta_bin); ties prefer the smaller scale. fields_by_scale[i]
/// corresponds to scale r_min + i.
Branch best_scale(const std::vector<GradientField>& fields_by_scale, int bin,
                  const SectorCache& sectors, const TailTable& table,
                  const DetectorConfig& cfg);

/// The full per-event test: per-scale binarization and gradients, orientation
/// candidates, per-candidate scale selection, and NFA-gated assembly of the
/// most meaningful branch set. Stateless w.r.t. the stream; safe to call
/// concurrently on patch snapshots.
class Detector {
 public:
  Detector(const DetectorConfig& cfg, const NfaConfig& nfa_cfg,
           const SectorCache& sectors, const TailTable& table);

  std::optional<Junction> detect(const Event& e, const Gsae& gsae) const;
  std::optional<Junction> detect_on_patch(const TimestampPatch& patch, double t) const;

  const DetectorConfig& config() const { return cfg_; }
  const NfaConfig& nfa_config() const { return nfa_cfg_; }

 private:
  DetectorConfig cfg_;
  NfaConfig nfa_cfg_;
  const SectorCache& sectors_;
  const TailTable& table_;
};

}  // namespace eacj
