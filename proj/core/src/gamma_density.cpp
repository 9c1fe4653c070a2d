#include "eacj/gamma_density.hpp"

#include <cmath>

namespace eacj {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);

// CDF of the conditional (nonzero) part: G(z) = (4/pi) * asin(z / sqrt(2)).
double unit_cdf(double z) { return (4.0 / kPi) * std::asin(z / kSqrt2); }

// First moment of the conditional part over [0, z]:
// \int_0^z u * 4/(pi*sqrt(2-u^2)) du = (4/pi) * (sqrt(2) - sqrt(2 - z^2)).
double unit_moment(double z) { return (4.0 / kPi) * (kSqrt2 - std::sqrt(2.0 - z * z)); }

}  // namespace

GammaDensity::GammaDensity(double p, double grid_step) : p_(p), grid_step_(grid_step) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ParameterError("GammaDensity: p must lie in (0,1), got " + std::to_string(p));
  }
  if (!(grid_step > 0.0 && grid_step <= 1e-2)) {
    throw ParameterError("GammaDensity: grid step must lie in (0, 1e-2], got " +
                         std::to_string(grid_step));
  }
  const double n = 1.0 / grid_step;
  cells_ = static_cast<int>(std::lround(n));
  if (std::abs(n - cells_) > 1e-9 || cells_ < 1) {
    throw ParameterError("GammaDensity: 1/grid_step must be an integer");
  }

  // Linear binning of exact per-cell masses and first moments onto the grid
  // nodes: each cell's mass is split between its two nodes so that the mean
  // is preserved.
  node_masses_.assign(static_cast<std::size_t>(cells_) + 1, 0.0);
  for (int i = 0; i < cells_; ++i) {
    const double z0 = i * grid_step_;
    const double z1 = (i + 1) * grid_step_;
    const double mass = unit_cdf(z1) - unit_cdf(z0);
    const double mean = (unit_moment(z1) - unit_moment(z0)) / mass;
    double hi = (mean - z0) / grid_step_;
    if (hi < 0.0) hi = 0.0;
    if (hi > 1.0) hi = 1.0;
    node_masses_[i] += mass * (1.0 - hi);
    node_masses_[i + 1] += mass * hi;
  }
}

double GammaDensity::density(double z) const {
  if (z < 0.0 || z > 1.0) return 0.0;
  return 2.0 * p_ / (kPi * std::sqrt(2.0 - z * z));
}

double GammaDensity::cell_mass(int i) const {
  if (i < 0 || i >= cells_) throw RangeError("GammaDensity::cell_mass: cell out of range");
  const double scale = p_ / 2.0;  // conditional part carries mass p/2
  return scale * (unit_cdf((i + 1) * grid_step_) - unit_cdf(i * grid_step_));
}

double GammaDensity::total_mass() const {
  double continuous = 0.0;
  for (int i = 0; i < cells_; ++i) continuous += cell_mass(i);
  return atom_mass() + continuous;
}

double GammaDensity::single_tail(double t) const {
  if (t <= 0.0) return 1.0;
  if (t > 1.0) return 0.0;
  return p_ * (0.5 - (2.0 / kPi) * std::asin(t / kSqrt2));
}

}  // namespace eacj
