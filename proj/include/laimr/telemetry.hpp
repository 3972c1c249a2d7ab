#pragma once

#include <deque>
#include <stdexcept>

// In-memory per-model traffic estimators feeding the routing controller.

namespace laimr {

// Sliding-window arrival counter. record() evicts entries older than the
// window, appends the new arrival, and reports the resulting rate, so the
// triggering request is always counted.
class SlidingWindowRate {
 public:
  explicit SlidingWindowRate(double window_seconds = 1.0);

  // Registers an arrival at t_now and returns the window rate. The clock must
  // be monotone: t_now below the newest stored arrival throws.
  double record(double t_now);

  // Rate the window would report at time t, without registering an arrival.
  double rate_at(double t) const;

  std::size_t size() const { return arrivals_.size(); }
  double window() const { return window_; }

 private:
  void evict(double t_now);

  std::deque<double> arrivals_;
  double window_;
};

// Exponentially weighted moving average of an arrival rate.
// update(r) moves the value to weight * value + (1 - weight) * r.
class EwmaRate {
 public:
  explicit EwmaRate(double weight, double initial = 0.0);

  double update(double rate);
  double value() const { return value_; }
  double weight() const { return weight_; }

  // Test hook: overwrite the accumulated value.
  void set_value(double v) { value_ = v; }

 private:
  double value_;
  double weight_;
};

}  // namespace laimr
