#include "laimr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace laimr {

double percentile(std::vector<double> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("percentile: no samples");
  if (!(p > 0 && p <= 100)) throw std::invalid_argument("percentile: p must be in (0, 100]");
  std::sort(samples.begin(), samples.end());
  const auto n = samples.size();
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  return samples[rank - 1];
}

SummaryStats summarize(const std::vector<double>& samples) {
  SummaryStats s;
  s.count = samples.size();
  if (samples.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.mean = s.p50 = s.p95 = s.p99 = s.iqr = s.max = nan;
    return s;
  }
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
           static_cast<double>(samples.size());
  s.p50 = percentile(samples, 50);
  s.p95 = percentile(samples, 95);
  s.p99 = percentile(samples, 99);
  s.iqr = percentile(samples, 75) - percentile(samples, 25);
  s.max = *std::max_element(samples.begin(), samples.end());
  return s;
}

double RunMetrics::offload_fraction() const {
  return arrivals == 0 ? 0.0 : static_cast<double>(offloaded) / static_cast<double>(arrivals);
}

double RunMetrics::mean_replicas() const {
  return duration > 0 ? replica_seconds / duration : 0.0;
}

}  // namespace laimr
