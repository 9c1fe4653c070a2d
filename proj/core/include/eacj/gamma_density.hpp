#pragma once

#include <vector>

#include "eacj/types.hpp"

namespace eacj {

/// Null-hypothesis distribution of the per-pixel alignment statistic:
/// a point mass of 1 - p/2 at zero plus the density 2p/(pi*sqrt(2 - z^2))
/// on [0, 1]. p is the Bernoulli rate of gradient presence.
///
/// Immutable after construction; shareable across detector workers.
class GammaDensity {
 public:
  static constexpr double kDefaultGridStep = 1.0 / 512.0;

  explicit GammaDensity(double p, double grid_step = kDefaultGridStep);

  double p() const { return p_; }
  double grid_step() const { return grid_step_; }
  int cells() const { return cells_; }

  double atom_mass() const { return 1.0 - p_ / 2.0; }
  /// Continuous density value at z (0 outside [0,1]); the atom is separate.
  double density(double z) const;
  /// Exact mass of the continuous part over grid cell i.
  double cell_mass(int i) const;
  /// atom + numeric integral of the continuous part; equals 1 up to rounding.
  double total_mass() const;

  /// P(gamma >= t) for a single draw, closed form.
  double single_tail(double t) const;

  /// Node masses of the continuous part conditioned on being nonzero
  /// (cells()+1 nodes at z = i*grid_step, summing to 1). Built with
  /// first-moment-preserving binning so that iterated convolutions do not
  /// drift.
  const std::vector<double>& unit_node_masses() const { return node_masses_; }

 private:
  double p_;
  double grid_step_;
  int cells_;
  std::vector<double> node_masses_;
};

}  // namespace eacj
