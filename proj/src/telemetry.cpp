#include "laimr/telemetry.hpp"

#include <string>

namespace laimr {

SlidingWindowRate::SlidingWindowRate(double window_seconds) : window_(window_seconds) {
  if (!(window_seconds > 0))
    throw std::invalid_argument("SlidingWindowRate: window must be > 0");
}

void SlidingWindowRate::evict(double t_now) {
  // Strict comparison: an arrival exactly one window old is retained.
  while (!arrivals_.empty() && t_now - arrivals_.front() > window_)
    arrivals_.pop_front();
}

double SlidingWindowRate::record(double t_now) {
  if (!arrivals_.empty() && t_now < arrivals_.back())
    throw std::invalid_argument("SlidingWindowRate: time went backwards (" +
                                std::to_string(t_now) + " < " +
                                std::to_string(arrivals_.back()) + ")");
  evict(t_now);
  arrivals_.push_back(t_now);
  return static_cast<double>(arrivals_.size()) / window_;
}

double SlidingWindowRate::rate_at(double t) const {
  std::size_t n = 0;
  for (auto it = arrivals_.rbegin(); it != arrivals_.rend(); ++it) {
    if (t - *it > window_) break;
    ++n;
  }
  return static_cast<double>(n) / window_;
}

EwmaRate::EwmaRate(double weight, double initial) : value_(initial), weight_(weight) {
  if (!(weight >= 0 && weight <= 1))
    throw std::invalid_argument("EwmaRate: weight must be in [0, 1]");
}

double EwmaRate::update(double rate) {
  if (!(rate >= 0)) throw std::invalid_argument("EwmaRate: rate must be >= 0");
  value_ = weight_ * value_ + (1.0 - weight_) * rate;
  return value_;
}

}  // namespace laimr
