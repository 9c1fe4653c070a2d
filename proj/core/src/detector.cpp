#include "eacj/detector.hpp"

#include <algorithm>
#include <cmath>

#include "eacj/binary_patch.hpp"

namespace eacj {

void DetectorConfig::validate() const {
  if (!(tau > 0.0)) throw ParameterError("detector: tau must be positive");
  if (r_min < 1 || r_max < r_min) throw ParameterError("detector: bad scale range");
  if (theta_bins < 4) throw ParameterError("detector: need at least 4 theta bins");
  if (max_branches < 2) throw ParameterError("detector: max branches must be >= 2");
  if (maxima_window < 1) throw ParameterError("detector: maxima window must be >= 1");
  if (!(binarize_count_scale > 0.0)) {
    throw ParameterError("detector: binarize count scale must be positive");
  }
}

std::pair<double, int> branch_strength(const GradientField& g,
                                       const std::vector<SectorMember>& members) {
  double omega = 0.0;
  for (const SectorMember& m : members) omega += gamma_alignment(g, m.dx, m.dy);
  return {omega, static_cast<int>(members.size())};
}

std::vector<double> orientation_profile(const GradientField& g,
                                        const SectorCache& sectors, int r) {
  std::vector<double> profile(sectors.theta_bins());
  for (int bin = 0; bin < sectors.theta_bins(); ++bin) {
    profile[bin] = branch_strength(g, sectors.members(r, bin)).first;
  }
  return profile;
}

std::vector<int> semi_local_maxima(const std::vector<double>& profile, int window) {
  if (window < 1) throw ParameterError("semi_local_maxima: window must be >= 1");
  const int n = static_cast<int>(profile.size());
  std::vector<int> maxima;
  for (int k = 0; k < n; ++k) {
    if (!(profile[k] > 0.0)) continue;
    bool is_max = true;
    for (int o = 1; o <= window && is_max; ++o) {
      for (int j : {(k + o) % n, (k - o + n * (1 + o / n)) % n}) {
        if (j == k) continue;
        if (profile[j] > profile[k] || (profile[j] == profile[k] && j < k)) {
          is_max = false;
          break;
        }
      }
    }
    if (is_max) maxima.push_back(k);
  }
  return maxima;
}

Branch best_scale(const std::vector<GradientField>& fields_by_scale, int bin,
                  const SectorCache& sectors, const TailTable& table,
                  const DetectorConfig& cfg) {
  Branch best;
  best.r = cfg.r_min;
  best.theta = sectors.bin_angle(bin);
  best.strength = 0.0;
  best.tail = 2.0;  // above any probability
  for (int r = cfg.r_min; r <= cfg.r_max; ++r) {
    const auto& members = sectors.members(r, bin);
    if (members.empty()) continue;
    const auto [omega, J] = branch_strength(fields_by_scale[r - cfg.r_min], members);
    const double tail = table.lookup(omega, J);
    if (tail < best.tail) {
      best.r = r;
      best.strength = omega;
      best.tail = tail;
    }
  }
  if (best.tail > 1.0) best.tail = 1.0;
  return best;
}

Detector::Detector(const DetectorConfig& cfg, const NfaConfig& nfa_cfg,
                   const SectorCache& sectors, const TailTable& table)
    : cfg_(cfg), nfa_cfg_(nfa_cfg), sectors_(sectors), table_(table) {
  cfg_.validate();
  nfa_cfg_.validate();
  if (sectors_.r_min() != cfg_.r_min || sectors_.r_max() != cfg_.r_max ||
      sectors_.theta_bins() != cfg_.theta_bins) {
    throw ParameterError("Detector: sector cache does not match configuration");
  }
}

std::optional<Junction> Detector::detect(const Event& e, const Gsae& gsae) const {
  const TimestampPatch patch = gsae.extract(e.x, e.y, cfg_.r_max);
  return detect_on_patch(patch, e.t);
}

std::optional<Junction> Detector::detect_on_patch(const TimestampPatch& patch,
                                                  double t) const {
  const int scales = cfg_.r_max - cfg_.r_min + 1;

  // Per-scale binary patches and gradient fields; each scale gets its own
  // newest-count cutoff.
  std::vector<GradientField> fields;
  fields.reserve(scales);
  for (int r = cfg_.r_min; r <= cfg_.r_max; ++r) {
    const TimestampPatch sub = (r == patch.radius) ? patch : patch.central(r);
    fields.push_back(gradient_field(binarize(sub, cfg_.binarize_count_scale)));
  }

  // Orientation candidates: union of semi-local maxima across scales.
  std::vector<std::uint8_t> candidate(cfg_.theta_bins, 0);
  for (int s = 0; s < scales; ++s) {
    const std::vector<double> profile =
        orientation_profile(fields[s], sectors_, cfg_.r_min + s);
    for (int bin : semi_local_maxima(profile, cfg_.maxima_window)) candidate[bin] = 1;
  }

  std::vector<Branch> branches;
  for (int bin = 0; bin < cfg_.theta_bins; ++bin) {
    if (!candidate[bin]) continue;
    Branch b = best_scale(fields, bin, sectors_, table_, cfg_);
    if (b.strength > 0.0) branches.push_back(b);
  }
  if (branches.size() < 2) return std::nullopt;

  // Most meaningful first; deterministic ordering.
  std::sort(branches.begin(), branches.end(), [](const Branch& a, const Branch& b) {
    if (a.tail != b.tail) return a.tail < b.tail;
    if (a.strength != b.strength) return a.strength > b.strength;
    return a.theta < b.theta;
  });

  // Greedy selection under the sector-disjointness constraint
  // d_2pi(theta_i, theta_j) > Delta(r_i) + Delta(r_j).
  std::vector<Branch> kept;
  for (const Branch& b : branches) {
    bool separated = true;
    for (const Branch& k : kept) {
      if (angle_distance(b.theta, k.theta) <=
          sectors_.half_width(b.r) + sectors_.half_width(k.r)) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(b);
  }
  if (kept.size() < 2) return std::nullopt;

  // Branch counts are tried richest-first; the weakest member's tail gates
  // each set, and the largest count that stays meaningful wins.
  const int m_max = std::min<int>(static_cast<int>(kept.size()), cfg_.max_branches);
  int best_m = 0;
  double best_nfa = 0.0;
  for (int m = m_max; m >= 2; --m) {
    const double value = number_of_tests(nfa_cfg_, m) * kept[m - 1].tail;
    if (value <= nfa_cfg_.epsilon) {
      best_m = m;
      best_nfa = value;
      break;
    }
  }
  if (best_m == 0) return std::nullopt;

  Junction j;
  j.x = patch.cx;
  j.y = patch.cy;
  j.t = t;
  j.branches.assign(kept.begin(), kept.begin() + best_m);
  j.strength = j.branches[0].strength;
  for (const Branch& b : j.branches) j.strength = std::min(j.strength, b.strength);
  j.nfa = best_nfa;
  return j;
}

}  // namespace eacj
