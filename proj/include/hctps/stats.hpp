#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hctps/error.hpp"

namespace hctps {

/// Summary of the best values of repeated runs, in table column order.
struct RunStats {
  double mean = 0.0;
  double best = 0.0;
  double worst = 0.0;
  double median = 0.0;
  double st_dev = 0.0;
  std::size_t n_runs = 0;
  double wall_time_s = 0.0;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

/// Sample statistics (n - 1 denominator; 0 for a single value). The mean is
/// clamped into [best, worst] so rounding can never break best <= mean <= worst.
inline RunStats compute_stats(std::span<const double> values, double wall_time_s = 0.0) {
  if (values.empty()) throw Error(ErrorKind::EmptySample, "statistics of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();

  RunStats s;
  s.n_runs = n;
  s.wall_time_s = wall_time_s;
  s.best = sorted.front();
  s.worst = sorted.back();
  s.median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = std::clamp(sum / static_cast<double>(n), s.best, s.worst);

  if (n > 1) {
    const double largest = std::max(std::abs(s.best), std::abs(s.worst));
    const double scale = largest > 0.0 ? std::ldexp(1.0, std::ilogb(largest)) : 1.0;
    double ss = 0.0;
    for (double v : values) {
      const double d = (v - s.mean) / scale;
      ss += d * d;
    }
    s.st_dev = scale * std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

}  // namespace hctps
