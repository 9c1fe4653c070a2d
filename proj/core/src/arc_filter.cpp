#include "eacj/arc_filter.hpp"

#include <string>

namespace eacj {

void FilterConfig::validate() const {
  circle_offsets(inner_radius);
  circle_offsets(outer_radius);
  const int inner_n = static_cast<int>(circle_offsets(inner_radius).size());
  const int outer_n = static_cast<int>(circle_offsets(outer_radius).size());
  auto check = [](const ArcBounds& b, int n, const char* name) {
    if (b.min_len <= 0 || b.max_len <= 0 || b.min_len > b.max_len || b.max_len > n) {
      throw ConfigError(std::string("filter: bad ") + name + " arc bounds [" +
                        std::to_string(b.min_len) + "," + std::to_string(b.max_len) +
                        "] for circle of " + std::to_string(n) + " pixels");
    }
  };
  check(inner_arc, inner_n, "inner");
  check(outer_arc, outer_n, "outer");
}

const std::vector<std::pair<int, int>>& circle_offsets(int radius) {
  // Clockwise on screen (y down), starting at (r, 0).
  static const std::vector<std::pair<int, int>> kCircle3 = {
      {3, 0},  {3, 1},  {2, 2},  {1, 3},  {0, 3},  {-1, 3}, {-2, 2}, {-3, 1},
      {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3}, {0, -3}, {1, -3}, {2, -2}, {3, -1}};
  static const std::vector<std::pair<int, int>> kCircle4 = {
      {4, 0},  {4, 1},  {3, 2},  {2, 3},  {1, 4},  {0, 4},  {-1, 4},
      {-2, 3}, {-3, 2}, {-4, 1}, {-4, 0}, {-4, -1}, {-3, -2}, {-2, -3},
      {-1, -4}, {0, -4}, {1, -4}, {2, -3}, {3, -2}, {4, -1}};
  switch (radius) {
    case 3:
      return kCircle3;
    case 4:
      return kCircle4;
    default:
      throw ConfigError("circle_offsets: unsupported radius " + std::to_string(radius));
  }
}

namespace {

// Arc expansion over one circle: grows an arc from the newest element,
// preferring the newer side, and returns the final size of the "newest
// segment". Ties are broken by traversal order (first index wins, left arc
// preferred on equal frontier values), which keeps the verdict deterministic.
int newest_segment_size(const std::vector<double>& v, int min_len) {
  const int n = static_cast<int>(v.size());
  double segment_min = v[0];
  int newest = 0;
  for (int i = 1; i < n; ++i) {
    if (v[i] > segment_min) {
      segment_min = v[i];
      newest = i;
    }
  }
  int left = (newest - 1 + n) % n;
  int right = (newest + 1) % n;
  double left_value = v[left];
  double right_value = v[right];
  double left_min = left_value;
  double right_min = right_value;

  int iteration = 1;
  for (; iteration < min_len; ++iteration) {
    if (right_value > left_value) {
      if (right_min < segment_min) segment_min = right_min;
      right = (right + 1) % n;
      right_value = v[right];
      if (right_value < right_min) right_min = right_value;
    } else {
      if (left_min < segment_min) segment_min = left_min;
      left = (left - 1 + n) % n;
      left_value = v[left];
      if (left_value < left_min) left_min = left_value;
    }
  }
  int size = min_len;
  for (; iteration < n; ++iteration) {
    if (right_value > left_value) {
      if (right_value >= segment_min) {
        size = iteration + 1;
        if (right_min < segment_min) segment_min = right_min;
      }
      right = (right + 1) % n;
      right_value = v[right];
      if (right_value < right_min) right_min = right_value;
    } else {
      if (left_value >= segment_min) {
        size = iteration + 1;
        if (left_min < segment_min) segment_min = left_min;
      }
      left = (left - 1 + n) % n;
      left_value = v[left];
      if (left_value < left_min) left_min = left_value;
    }
  }
  return size;
}

bool circle_passes(const TimestampPatch& patch, int radius, const ArcBounds& bounds) {
  const auto& circle = circle_offsets(radius);
  const int n = static_cast<int>(circle.size());
  std::vector<double> v(circle.size());
  for (std::size_t i = 0; i < circle.size(); ++i) {
    v[i] = patch.at(circle[i].first, circle[i].second);
  }
  bool all_equal = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] != v[0]) {
      all_equal = false;
      break;
    }
  }
  if (all_equal) return false;  // no distinguished arc
  const int size = newest_segment_size(v, bounds.min_len);
  const bool direct = size >= bounds.min_len && size <= bounds.max_len;
  const bool complement =
      size >= n - bounds.max_len && size <= n - bounds.min_len;
  return direct || complement;
}

}  // namespace

bool is_candidate(const TimestampPatch& patch, const FilterConfig& cfg) {
  cfg.validate();
  if (patch.radius < cfg.outer_radius) {
    throw GeometryError("is_candidate: patch radius " + std::to_string(patch.radius) +
                        " smaller than outer circle radius " +
                        std::to_string(cfg.outer_radius));
  }
  return circle_passes(patch, cfg.inner_radius, cfg.inner_arc) &&
         circle_passes(patch, cfg.outer_radius, cfg.outer_arc);
}

}  // namespace eacj
