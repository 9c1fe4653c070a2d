#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eacj/gamma_density.hpp"

namespace eacj {

/// Ingredients of the number-of-tests factor and the meaningfulness
/// threshold of the NFA gate.
struct NfaConfig {
  double epsilon = 1.0;
  std::int64_t image_area = 240 * 180;
  int scale_count = 13;
  int orientation_count = 64;
  int max_branches = 4;

  void validate() const;
};

/// #tests for junctions with `branch_count` branches:
/// image_area * scale_count * C(orientation_count, branch_count).
double number_of_tests(const NfaConfig& cfg, int branch_count);

/// P(sum of `sector_size` independent draws from d >= t). The zero atom is
/// handled exactly through a binomial mixture over the count of nonzero
/// summands; the continuous part is convolved on the grid.
double tail_probability(double t, int sector_size, const GammaDensity& d);

/// Precomputed tails F(t; J) for a fixed set of sector sizes J, sampled on
/// the t grid {0, dt, 2dt, ..., J}. Grid-point values match tail_probability
/// bit for bit; lookups between points interpolate linearly, clamped to
/// [0, 1]. Immutable after construction.
class TailTable {
 public:
  TailTable(const GammaDensity& d, std::vector<int> sector_sizes);

  double p() const { return p_; }
  double grid_step() const { return dt_; }
  bool has(int sector_size) const;
  const std::vector<int>& sector_sizes() const { return sizes_; }

  double lookup(double t, int sector_size) const;

  void save(const std::string& path) const;
  /// Returns the cached table when the file exists and its key (p, dt)
  /// matches and it covers every requested sector size; nullopt otherwise.
  static std::optional<TailTable> load(const std::string& path, double p,
                                       double grid_step,
                                       const std::vector<int>& sector_sizes);

 private:
  TailTable() = default;

  double p_ = 0.0;
  double dt_ = 0.0;
  std::vector<int> sizes_;                   // ascending
  std::vector<std::vector<double>> tails_;   // per size, 512*J+1 grid values
};

double nfa(double t, int sector_size, int branch_count, const TailTable& table,
           const NfaConfig& cfg);

}  // namespace eacj
