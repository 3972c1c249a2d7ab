#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Latency-sample collection and the summary statistics reported per run.

namespace laimr {

// Nearest-rank percentile: the ceil(p/100 * n)-th order statistic of the
// ascending sort. p must lie in (0, 100]; empty input throws.
double percentile(std::vector<double> samples, double p);

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double iqr = 0.0;  // p75 - p25
  double max = 0.0;
};

// All-NaN stats for count == 0, so empty cells stay visible in reports.
SummaryStats summarize(const std::vector<double>& samples);

// Everything measured over one simulation run.
struct RunMetrics {
  std::vector<double> latencies;               // end-to-end, completed requests
  std::vector<double> waits;                   // queue wait component
  std::map<std::string, std::vector<double>> latencies_by_model;

  std::uint64_t arrivals = 0;
  std::uint64_t completions = 0;
  std::uint64_t offloaded = 0;          // requests redirected upstream
  std::uint64_t in_flight_at_end = 0;
  std::uint64_t scale_out_signals = 0;
  std::uint64_t scale_in_signals = 0;
  std::uint64_t replicas_started = 0;
  std::uint64_t replicas_drained = 0;
  std::uint64_t draining_service_starts = 0;  // must stay 0; lifecycle guard
  double replica_seconds = 0.0;               // integral of ready replicas over time
  double duration = 0.0;
  std::uint64_t event_log_hash = 0;           // FNV-1a over the event stream

  SummaryStats latency_stats() const { return summarize(latencies); }
  double offload_fraction() const;
  double mean_replicas() const;
};

}  // namespace laimr
