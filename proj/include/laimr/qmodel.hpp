#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Closed-form latency and queueing model for multi-replica inference pools.
// Everything in this header is a pure function of its inputs; all times are
// seconds, all rates requests per second.

namespace laimr {

// Evaluating a queueing expression outside its stability region (rho >= 1).
class UnstableQueueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Calibration input that cannot pin down a fit.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Tier { Edge, Cloud };

const char* tier_name(Tier t);

// Static description of one inference model.
struct ModelProfile {
  std::string id;
  double ref_latency = 0.0;  // single-inference latency on reference hardware
  double demand = 0.0;       // CPU-seconds consumed per inference
  double accuracy = 0.0;     // steady-state accuracy in [0, 1]

  std::vector<std::string> validate() const;
};

// Static description of one serving instance (edge or cloud VM).
struct InstanceProfile {
  std::string id;
  Tier tier = Tier::Edge;
  double speedup = 1.0;                         // default hardware multiplier
  std::map<std::string, double> model_speedup;  // per-model overrides
  double capacity = 1.0;      // sustainable CPU-seconds per second
  double background = 0.0;    // co-tenant load, CPU-seconds per second
  double net_rtt = 0.0;       // round-trip network delay, seconds
  double replica_cost = 1.0;  // cost units per replica
  int replica_cap = 1;        // max replicas of any one pool on this instance

  double speedup_for(const std::string& model_id) const;
  std::vector<std::string> validate() const;
};

// Fitted parameters of the affine power-law latency curve
// latency(rate) = alpha + beta * rate^gamma.
struct CalibrationParams {
  double alpha = 0.0;  // idle baseline, seconds
  double beta = 0.0;   // contention slope
  double gamma = 1.0;  // contention exponent, > 0

  std::vector<std::string> validate() const;
};

// Parameters of the batch-size latency curve latency(b) = hw_const * model_size * b^batch_exp.
struct BatchLatencyParams {
  double hw_const = 0.0;   // hardware/framework constant, seconds per byte
  double model_size = 0.0; // parameter file size, bytes
  double batch_exp = 0.5;  // sub-linear exponent in (0, 1)

  std::vector<std::string> validate() const;
};

// One M/M/c pool: aggregate arrivals over `servers` identical replicas.
struct QueueParams {
  double arrival = 0.0;       // requests per second
  int servers = 1;
  double service_rate = 1.0;  // per-replica requests per second
};

using RateMap = std::map<std::string, double>;  // model id -> value

struct PoolKey {
  std::string model;
  std::string instance;
  auto operator<=>(const PoolKey&) const = default;
};

// Replica count per (model, instance) pool.
using Layout = std::map<PoolKey, int>;

struct Catalog {
  std::map<std::string, ModelProfile> models;
  std::map<std::string, InstanceProfile> instances;
  CalibrationParams cal;

  const ModelProfile& model(const std::string& id) const;
  const InstanceProfile& instance(const std::string& id) const;
  RateMap demands() const;  // model id -> CPU-seconds per inference
};

// Mean per-inference latency for batch size b. Requires b >= 1.
double batch_latency(const BatchLatencyParams& p, double batch);

// Instantaneous utilization (sum_m rate_m * demand_m + background) / capacity.
// May exceed 1; overload is representable. Every model in `rates` must have
// an entry in `demands`.
double utilization(const InstanceProfile& inst, const RateMap& rates,
                   const RateMap& demands);

// Inference latency as a function of utilization: (L/S) * (1 + U^gamma).
double infer_latency_util(const ModelProfile& m, const InstanceProfile& inst,
                          double util, double gamma);

// Affine power-law latency at a per-replica arrival rate.
double infer_latency_affine(const CalibrationParams& cal, double per_replica_rate);

struct RateSample {
  double per_replica_rate = 0.0;
  double latency = 0.0;
};

// Least-squares fit of (alpha, beta, gamma) to latency samples, constrained to
// alpha, beta >= 0 and gamma in (0, 3]. Deterministic grid refinement over
// gamma with a closed-form linear solve for (alpha, beta) at each step.
// Requires at least 3 samples spanning >= 2 distinct rates.
CalibrationParams calibrate(const std::vector<RateSample>& samples);

// Probability an arrival waits in an M/M/c queue with offered load a = lambda/mu.
// Computed by the Erlang-B recurrence, stable for large server counts.
// Requires a < c; throws UnstableQueueError otherwise.
double erlang_c(double offered_load, int servers);

// Expected M/M/c queueing delay C(a, N) / (N*mu - lambda).
double queue_delay(const QueueParams& q);

// Per-replica service rate mu = S / L of a model on an instance.
double service_rate(const ModelProfile& m, const InstanceProfile& inst);

// End-to-end latency prediction for a pool under a fixed replica layout:
// processing (utilization form) + network RTT + M/M/N queueing delay.
//
// `rates` holds arrival rates as seen by this instance; the queried model's
// entry is the pool aggregate and is divided by `replicas` inside the
// utilization term, other entries enter utilization as given. Throws
// UnstableQueueError when the pool is overloaded.
double g_lambda(const ModelProfile& m, const InstanceProfile& inst,
                const CalibrationParams& cal, const RateMap& rates,
                const RateMap& demands, int replicas);

// Latency as a function of the replica count, for fixed traffic. Processing
// and network terms are constant in N; only the queueing term varies.
// Returns +infinity (orderable, not an error) when N is below the stability
// boundary, so capacity planners can search over N.
double g_of_n(const ModelProfile& m, const InstanceProfile& inst,
              const CalibrationParams& cal, const RateMap& rates,
              const RateMap& demands, int replicas);

struct TaskAssignment {
  std::string task;
  PoolKey pool;
};

// Task-level latency: each task experiences the g of its assigned pool.
// Every task must appear exactly once in the assignment.
std::map<std::string, double> task_latency(const std::vector<std::string>& tasks,
                                           const std::vector<TaskAssignment>& assignment,
                                           const Catalog& catalog,
                                           const RateMap& rates,
                                           const Layout& layout);

}  // namespace laimr
