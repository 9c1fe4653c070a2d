#include "eacj/tail_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace eacj {

void NfaConfig::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError("nfa: epsilon must be positive");
  if (image_area < 1) throw ParameterError("nfa: image area must be >= 1");
  if (scale_count < 1) throw ParameterError("nfa: scale count must be >= 1");
  if (orientation_count < 1) throw ParameterError("nfa: orientation count must be >= 1");
  if (max_branches < 1) throw ParameterError("nfa: max branches must be >= 1");
}

double number_of_tests(const NfaConfig& cfg, int branch_count) {
  cfg.validate();
  if (branch_count < 1 || branch_count > cfg.max_branches) {
    throw ParameterError("number_of_tests: branch count " + std::to_string(branch_count) +
                         " outside [1," + std::to_string(cfg.max_branches) + "]");
  }
  if (branch_count > cfg.orientation_count) {
    throw ParameterError("number_of_tests: branch count exceeds orientation count");
  }
  double subsets = 1.0;  // C(orientation_count, branch_count)
  for (int i = 1; i <= branch_count; ++i) {
    subsets = subsets * (cfg.orientation_count - branch_count + i) / i;
  }
  subsets = std::round(subsets);
  return static_cast<double>(cfg.image_area) * cfg.scale_count * subsets;
}

namespace {

// log C(n,k) + k log q + (n-k) log(1-q)
double log_binomial_pmf(int n, int k, double q) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
         k * std::log(q) + (n - k) * std::log1p(-q);
}

// Runs the iterated self-convolution of the conditional node masses up to
// k_max and hands each power's suffix-sum (tail-at-node) array to `visit`.
// visit(k, tail_nodes): tail_nodes[i] = P(S_k >= i*dt) for the discretized
// sum of k nonzero draws.
template <typename Visit>
void for_each_convolution_power(const GammaDensity& d, int k_max, Visit visit) {
  const std::vector<double>& kernel = d.unit_node_masses();
  const std::size_t kn = kernel.size();  // cells + 1
  std::vector<double> cur(kernel);
  std::vector<double> next;
  std::vector<double> tail;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      next.assign(cur.size() + kn - 1, 0.0);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        const double c = cur[i];
        if (c == 0.0) continue;
        double* out = next.data() + i;
        for (std::size_t j = 0; j < kn; ++j) out[j] += c * kernel[j];
      }
      cur.swap(next);
    }
    tail.resize(cur.size());
    double acc = 0.0;
    for (std::size_t i = cur.size(); i-- > 0;) {
      acc += cur[i];
      tail[i] = acc;
    }
    visit(k, tail);
  }
}

// Linear interpolation of a tail-at-node array at t (in node units).
double eval_tail_nodes(const std::vector<double>& tail_nodes, double t_nodes) {
  if (t_nodes <= 0.0) return tail_nodes[0];
  const double last = static_cast<double>(tail_nodes.size() - 1);
  if (t_nodes > last) return 0.0;
  const std::size_t i = static_cast<std::size_t>(t_nodes);
  if (i + 1 >= tail_nodes.size()) return tail_nodes.back();
  const double frac = t_nodes - static_cast<double>(i);
  return tail_nodes[i] + frac * (tail_nodes[i + 1] - tail_nodes[i]);
}

constexpr double kPmfFloor = 1e-300;

}  // namespace

double tail_probability(double t, int sector_size, const GammaDensity& d) {
  if (sector_size < 1) throw ParameterError("tail_probability: sector size must be >= 1");
  if (!(t >= 0.0)) throw ParameterError("tail_probability: t must be >= 0");
  if (t > sector_size) return 0.0;
  const double q = d.p() / 2.0;
  double result = (t <= 0.0) ? std::exp(sector_size * std::log1p(-q)) : 0.0;
  const double t_nodes = t / d.grid_step();
  for_each_convolution_power(d, sector_size, [&](int k, const std::vector<double>& tail) {
    if (t > static_cast<double>(k)) return;  // S_k <= k
    const double w = std::exp(log_binomial_pmf(sector_size, k, q));
    if (w < kPmfFloor) return;
    result += w * eval_tail_nodes(tail, t_nodes);
  });
  return result;
}

TailTable::TailTable(const GammaDensity& d, std::vector<int> sector_sizes) {
  p_ = d.p();
  dt_ = d.grid_step();
  std::sort(sector_sizes.begin(), sector_sizes.end());
  sector_sizes.erase(std::unique(sector_sizes.begin(), sector_sizes.end()),
                     sector_sizes.end());
  if (sector_sizes.empty() || sector_sizes.front() < 1) {
    throw ParameterError("TailTable: sector sizes must be a non-empty set of ints >= 1");
  }
  sizes_ = std::move(sector_sizes);
  const int nodes_per_unit = d.cells();
  const double q = p_ / 2.0;

  tails_.resize(sizes_.size());
  for (std::size_t s = 0; s < sizes_.size(); ++s) {
    const int J = sizes_[s];
    tails_[s].assign(static_cast<std::size_t>(nodes_per_unit) * J + 1, 0.0);
    // K = 0 term: the all-zero sum contributes only at t = 0.
    tails_[s][0] = std::exp(J * std::log1p(-q));
  }

  const int k_max = sizes_.back();
  for_each_convolution_power(d, k_max, [&](int k, const std::vector<double>& tail) {
    for (std::size_t s = 0; s < sizes_.size(); ++s) {
      const int J = sizes_[s];
      if (k > J) continue;
      const double w = std::exp(log_binomial_pmf(J, k, q));
      if (w < kPmfFloor) continue;
      std::vector<double>& grid = tails_[s];
      const std::size_t n = std::min(grid.size(), tail.size());
      for (std::size_t i = 0; i < n; ++i) grid[i] += w * tail[i];
    }
  });
}

bool TailTable::has(int sector_size) const {
  return std::binary_search(sizes_.begin(), sizes_.end(), sector_size);
}

double TailTable::lookup(double t, int sector_size) const {
  const auto it = std::lower_bound(sizes_.begin(), sizes_.end(), sector_size);
  if (it == sizes_.end() || *it != sector_size) {
    throw RangeError("TailTable::lookup: sector size " + std::to_string(sector_size) +
                     " not tabulated");
  }
  const std::vector<double>& grid = tails_[it - sizes_.begin()];
  if (t <= 0.0) return std::min(grid[0], 1.0);
  if (t >= static_cast<double>(sector_size)) return 0.0;
  const double t_nodes = t / dt_;
  std::size_t i = static_cast<std::size_t>(t_nodes);
  if (i >= grid.size() - 1) i = grid.size() - 2;
  const double frac = t_nodes - static_cast<double>(i);
  double v = grid[i] + frac * (grid[i + 1] - grid[i]);
  if (v < 0.0) v = 0.0;
  if (v > 1.0) v = 1.0;
  return v;
}

namespace {
constexpr char kCacheMagic[8] = {'E', 'A', 'C', 'J', 'T', 'A', 'B', '1'};
}

void TailTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write tail cache: " + path);
  out.write(kCacheMagic, sizeof(kCacheMagic));
  auto put = [&out](const void* data, std::size_t n) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  };
  put(&p_, sizeof(p_));
  put(&dt_, sizeof(dt_));
  const std::uint64_t count = sizes_.size();
  put(&count, sizeof(count));
  for (std::size_t s = 0; s < sizes_.size(); ++s) {
    const std::int64_t J = sizes_[s];
    const std::uint64_t len = tails_[s].size();
    put(&J, sizeof(J));
    put(&len, sizeof(len));
    put(tails_[s].data(), len * sizeof(double));
  }
  if (!out) throw IoError("failed writing tail cache: " + path);
}

std::optional<TailTable> TailTable::load(const std::string& path, double p,
                                         double grid_step,
                                         const std::vector<int>& sector_sizes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) return std::nullopt;
  TailTable table;
  auto get = [&in](void* data, std::size_t n) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  };
  get(&table.p_, sizeof(table.p_));
  get(&table.dt_, sizeof(table.dt_));
  std::uint64_t count = 0;
  get(&count, sizeof(count));
  if (!in || count == 0 || count > 100000) return std::nullopt;
  table.sizes_.reserve(count);
  table.tails_.reserve(count);
  for (std::uint64_t s = 0; s < count; ++s) {
    std::int64_t J = 0;
    std::uint64_t len = 0;
    get(&J, sizeof(J));
    get(&len, sizeof(len));
    if (!in || J < 1 || len == 0 || len > (1ull << 32)) return std::nullopt;
    std::vector<double> grid(len);
    get(grid.data(), len * sizeof(double));
    if (!in) return std::nullopt;
    table.sizes_.push_back(static_cast<int>(J));
    table.tails_.push_back(std::move(grid));
  }
  if (table.p_ != p || table.dt_ != grid_step) return std::nullopt;
  for (int J : sector_sizes) {
    if (!table.has(J)) return std::nullopt;
  }
  return table;
}

double nfa(double t, int sector_size, int branch_count, const TailTable& table,
           const NfaConfig& cfg) {
  return number_of_tests(cfg, branch_count) * table.lookup(t, sector_size);
}

}  // namespace eacj
