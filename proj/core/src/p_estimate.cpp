#include "eacj/p_estimate.hpp"

#include "eacj/gradient.hpp"

namespace eacj {

double gradient_presence_fraction(const BinaryPatch& patch) {
  const GradientField g = gradient_field(patch);
  const int r = patch.radius;
  long long present = 0;
  long long interior = 0;
  for (int dy = -r + 1; dy <= r - 1; ++dy) {
    for (int dx = -r + 1; dx <= r - 1; ++dx) {
      ++interior;
      if (g.has(dx, dy)) ++present;
    }
  }
  if (interior == 0) return 0.0;
  return static_cast<double>(present) / static_cast<double>(interior);
}

double estimate_p(const std::vector<Event>& events, Gsae& gsae,
                  const PEstimateOptions& opts) {
  if (events.empty()) throw ParameterError("estimate_p: empty event sample");
  if (opts.stride == 0) throw ParameterError("estimate_p: stride must be >= 1");
  double sum = 0.0;
  std::size_t samples = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    gsae.update(events[i]);
    if (i % opts.stride != 0) continue;
    const TimestampPatch patch = gsae.extract(events[i].x, events[i].y, opts.radius);
    sum += gradient_presence_fraction(binarize(patch, opts.count_scale));
    ++samples;
  }
  return sum / static_cast<double>(samples);
}

}  // namespace eacj
