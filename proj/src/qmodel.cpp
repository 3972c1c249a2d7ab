#include "laimr/qmodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace laimr {

namespace {

double rate_or_zero(const RateMap& rates, const std::string& id) {
  auto it = rates.find(id);
  return it == rates.end() ? 0.0 : it->second;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

const char* tier_name(Tier t) { return t == Tier::Edge ? "edge" : "cloud"; }

std::vector<std::string> ModelProfile::validate() const {
  std::vector<std::string> errs;
  if (id.empty()) errs.push_back("ModelProfile.id: must be non-empty");
  if (!(ref_latency > 0)) errs.push_back("ModelProfile.ref_latency: must be > 0");
  if (!(demand > 0)) errs.push_back("ModelProfile.demand: must be > 0");
  if (!(accuracy >= 0 && accuracy <= 1))
    errs.push_back("ModelProfile.accuracy: must be in [0, 1]");
  return errs;
}

double InstanceProfile::speedup_for(const std::string& model_id) const {
  auto it = model_speedup.find(model_id);
  return it == model_speedup.end() ? speedup : it->second;
}

std::vector<std::string> InstanceProfile::validate() const {
  std::vector<std::string> errs;
  if (id.empty()) errs.push_back("InstanceProfile.id: must be non-empty");
  if (!(speedup > 0)) errs.push_back("InstanceProfile.speedup: must be > 0");
  for (const auto& [model, s] : model_speedup) {
    if (!(s > 0))
      errs.push_back("InstanceProfile.model_speedup[" + model + "]: must be > 0");
  }
  if (!(capacity > 0)) errs.push_back("InstanceProfile.capacity: must be > 0");
  if (!(background >= 0)) errs.push_back("InstanceProfile.background: must be >= 0");
  if (!(net_rtt >= 0)) errs.push_back("InstanceProfile.net_rtt: must be >= 0");
  if (replica_cap < 1) errs.push_back("InstanceProfile.replica_cap: must be >= 1");
  return errs;
}

std::vector<std::string> CalibrationParams::validate() const {
  std::vector<std::string> errs;
  if (!(alpha > 0)) errs.push_back("CalibrationParams.alpha: must be > 0");
  if (!(beta >= 0)) errs.push_back("CalibrationParams.beta: must be >= 0");
  if (!(gamma > 0)) errs.push_back("CalibrationParams.gamma: must be > 0");
  return errs;
}

std::vector<std::string> BatchLatencyParams::validate() const {
  std::vector<std::string> errs;
  if (!(hw_const > 0)) errs.push_back("BatchLatencyParams.hw_const: must be > 0");
  if (!(model_size > 0)) errs.push_back("BatchLatencyParams.model_size: must be > 0");
  if (!(batch_exp > 0 && batch_exp < 1))
    errs.push_back("BatchLatencyParams.batch_exp: must be in (0, 1)");
  return errs;
}

const ModelProfile& Catalog::model(const std::string& id) const {
  auto it = models.find(id);
  require(it != models.end(), "unknown model: " + id);
  return it->second;
}

const InstanceProfile& Catalog::instance(const std::string& id) const {
  auto it = instances.find(id);
  require(it != instances.end(), "unknown instance: " + id);
  return it->second;
}

RateMap Catalog::demands() const {
  RateMap d;
  for (const auto& [id, m] : models) d[id] = m.demand;
  return d;
}

double batch_latency(const BatchLatencyParams& p, double batch) {
  require(batch >= 1.0, "batch_latency: batch size must be >= 1");
  return p.hw_const * p.model_size * std::pow(batch, p.batch_exp);
}

double utilization(const InstanceProfile& inst, const RateMap& rates,
                   const RateMap& demands) {
  double load = inst.background;
  for (const auto& [model, rate] : rates) {
    require(rate >= 0, "utilization: negative rate for model " + model);
    auto it = demands.find(model);
    require(it != demands.end(), "utilization: no demand entry for model " + model);
    load += rate * it->second;
  }
  return load / inst.capacity;
}

double infer_latency_util(const ModelProfile& m, const InstanceProfile& inst,
                          double util, double gamma) {
  require(util >= 0, "infer_latency_util: utilization must be >= 0");
  return m.ref_latency / inst.speedup_for(m.id) * (1.0 + std::pow(util, gamma));
}

double infer_latency_affine(const CalibrationParams& cal, double per_replica_rate) {
  require(per_replica_rate >= 0, "infer_latency_affine: rate must be >= 0");
  return cal.alpha + cal.beta * std::pow(per_replica_rate, cal.gamma);
}

namespace {

struct LinearFit {
  double alpha = 0.0;
  double beta = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

// Closed-form least squares for latency = alpha + beta * rate^gamma at a fixed
// gamma, restricted to alpha, beta >= 0. When the unconstrained optimum leaves
// the quadrant, the best boundary solution (alpha = 0 or beta = 0) wins.
LinearFit fit_at_gamma(const std::vector<RateSample>& samples, double gamma) {
  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    const double x = std::pow(s.per_replica_rate, gamma);
    sx += x;
    sy += s.latency;
    sxx += x * x;
    sxy += x * s.latency;
    syy += s.latency * s.latency;
  }
  auto sse_of = [&](double a, double b) {
    return syy + n * a * a + b * b * sxx - 2 * a * sy - 2 * b * sxy + 2 * a * b * sx;
  };
  LinearFit best;
  auto consider = [&](double a, double b) {
    if (a < 0 || b < 0) return;
    const double sse = sse_of(a, b);
    if (sse < best.sse) best = {a, b, sse};
  };
  const double det = n * sxx - sx * sx;
  if (det > 0) consider((sy * sxx - sx * sxy) / det, (n * sxy - sx * sy) / det);
  consider(std::max(sy / n, 0.0), 0.0);                    // beta pinned at 0
  if (sxx > 0) consider(0.0, std::max(sxy / sxx, 0.0));    // alpha pinned at 0
  return best;
}

}  // namespace

CalibrationParams calibrate(const std::vector<RateSample>& samples) {
  if (samples.size() < 3)
    throw InsufficientDataError("calibrate: need at least 3 samples");
  double lo_rate = std::numeric_limits<double>::infinity(), hi_rate = 0;
  for (const auto& s : samples) {
    require(s.per_replica_rate >= 0, "calibrate: negative arrival rate");
    lo_rate = std::min(lo_rate, s.per_replica_rate);
    hi_rate = std::max(hi_rate, s.per_replica_rate);
  }
  if (!(hi_rate > lo_rate))
    throw InsufficientDataError("calibrate: all samples share one arrival rate");

  constexpr int kGridPoints = 121;
  constexpr int kRounds = 48;
  double lo = 1e-6, hi = 3.0;
  double best_gamma = 1.0;
  for (int round = 0; round < kRounds; ++round) {
    double best_sse = std::numeric_limits<double>::infinity();
    const double step = (hi - lo) / (kGridPoints - 1);
    for (int i = 0; i < kGridPoints; ++i) {
      const double g = lo + step * i;
      const double sse = fit_at_gamma(samples, g).sse;
      if (sse < best_sse) {
        best_sse = sse;
        best_gamma = g;
      }
    }
    lo = std::max(1e-9, best_gamma - 2 * step);
    hi = std::min(3.0, best_gamma + 2 * step);
  }
  const LinearFit fit = fit_at_gamma(samples, best_gamma);
  return {fit.alpha, fit.beta, best_gamma};
}

double erlang_c(double offered_load, int servers) {
  require(servers >= 1, "erlang_c: servers must be >= 1");
  require(offered_load >= 0, "erlang_c: offered load must be >= 0");
  if (offered_load >= servers)
    throw UnstableQueueError("erlang_c: offered load " + std::to_string(offered_load) +
                             " >= servers " + std::to_string(servers));
  if (servers == 1) return offered_load;  // M/M/1: waiting probability is rho
  double b = 1.0;  // Erlang-B recurrence, overflow-free for large c
  for (int k = 1; k <= servers; ++k) b = offered_load * b / (k + offered_load * b);
  const double rho = offered_load / servers;
  return b / (1.0 - rho * (1.0 - b));
}

double queue_delay(const QueueParams& q) {
  require(q.servers >= 1, "queue_delay: servers must be >= 1");
  require(q.service_rate > 0, "queue_delay: service rate must be > 0");
  require(q.arrival >= 0, "queue_delay: arrival rate must be >= 0");
  if (q.arrival == 0) return 0.0;
  const double pool_rate = q.servers * q.service_rate;
  if (q.arrival >= pool_rate)
    throw UnstableQueueError("queue_delay: rho = " +
                             std::to_string(q.arrival / pool_rate) + " >= 1");
  return erlang_c(q.arrival / q.service_rate, q.servers) / (pool_rate - q.arrival);
}

double service_rate(const ModelProfile& m, const InstanceProfile& inst) {
  return inst.speedup_for(m.id) / m.ref_latency;
}

double g_lambda(const ModelProfile& m, const InstanceProfile& inst,
                const CalibrationParams& cal, const RateMap& rates,
                const RateMap& demands, int replicas) {
  require(replicas >= 1, "g_lambda: replicas must be >= 1");
  const double lam = rate_or_zero(rates, m.id);
  RateMap per_replica = rates;
  per_replica[m.id] = lam / replicas;
  const double util = utilization(inst, per_replica, demands);
  const double processing = infer_latency_util(m, inst, util, cal.gamma);
  const double wait = queue_delay({lam, replicas, service_rate(m, inst)});
  return processing + inst.net_rtt + wait;
}

double g_of_n(const ModelProfile& m, const InstanceProfile& inst,
              const CalibrationParams& cal, const RateMap& rates,
              const RateMap& demands, int replicas) {
  require(replicas >= 1, "g_of_n: replicas must be >= 1");
  const double util = utilization(inst, rates, demands);
  const double processing = infer_latency_util(m, inst, util, cal.gamma);
  const double lam = rate_or_zero(rates, m.id);
  const double mu = service_rate(m, inst);
  if (lam >= replicas * mu) return std::numeric_limits<double>::infinity();
  return processing + inst.net_rtt + queue_delay({lam, replicas, mu});
}

std::map<std::string, double> task_latency(const std::vector<std::string>& tasks,
                                           const std::vector<TaskAssignment>& assignment,
                                           const Catalog& catalog,
                                           const RateMap& rates,
                                           const Layout& layout) {
  std::map<std::string, int> seen;
  for (const auto& a : assignment) ++seen[a.task];
  for (const auto& t : tasks) {
    const int count = seen.count(t) ? seen.at(t) : 0;
    if (count != 1) {
      std::ostringstream msg;
      msg << "task_latency: task " << t << " assigned " << count << " times";
      throw std::invalid_argument(msg.str());
    }
  }
  require(assignment.size() == tasks.size(),
          "task_latency: assignment mentions unknown tasks");

  const RateMap demands = catalog.demands();
  std::map<std::string, double> out;
  for (const auto& a : assignment) {
    const auto& m = catalog.model(a.pool.model);
    const auto& inst = catalog.instance(a.pool.instance);
    auto it = layout.find(a.pool);
    require(it != layout.end(), "task_latency: no layout entry for pool " +
                                    a.pool.model + "@" + a.pool.instance);
    out[a.task] = g_lambda(m, inst, catalog.cal, rates, demands, it->second);
  }
  return out;
}

}  // namespace laimr
