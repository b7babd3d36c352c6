// Repeated kidney exchange runs over pair counts and latencies, with oracle
// verification and per-run metrics.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "kepmpc/bench/generate.hpp"
#include "kepmpc/plain/tree_trace.hpp"
#include "kepmpc/runtime/config.hpp"

namespace kepmpc::bench {

struct ExperimentConfig {
  std::vector<int> pairs{4, 6, 8};
  int max_cycle = 3;
  int repetitions = 50;
  std::vector<double> latencies_ms{1.0, 5.0, 10.0};
  TransportKind transport = TransportKind::kInProcess;
  std::uint64_t seed = 1;
  // Brute-force verification up to this many pairs; above it only
  // verify_solution runs.
  int oracle_cap = 10;
  // Charge local computation to the simulated clock.
  bool charge_compute = true;
  PairDistribution distribution;

  void validate() const;
};

struct MetricsRecord {
  int pairs = 0;
  int max_cycle = 0;
  double latency_ms = 0.0;
  int repetition = 0;
  std::uint64_t instance_seed = 0;
  double wall_seconds = 0.0;
  double simulated_seconds = 0.0;
  // Maximum over peers.
  std::uint64_t bytes_sent = 0;
  std::uint64_t rounds = 0;
  std::size_t nodes = 0;
  std::size_t iterations = 0;
  int transplants = 0;
  std::optional<int> oracle_transplants;
  bool verified = false;
  TreeTrace trace;
};

nlohmann::json to_json(const MetricsRecord& r);

class VerificationError : public std::runtime_error {
 public:
  VerificationError(const std::string& what, std::uint64_t seed) : std::runtime_error(what), seed_(seed) {}
  // Instance seed reproducing the failure with generate_pairs.
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Seed of the instance for a repetition, shared by every pair count and
// latency. generate_pairs draws pair by pair, so the instance for n pairs is
// the first n pairs of any larger one with the same seed.
std::uint64_t instance_seed(std::uint64_t seed, int repetition);

// One run: generate, solve, verify. Throws VerificationError when the
// result is not a valid optimal exchange.
MetricsRecord run_instance(const ExperimentConfig& cfg, int pairs, double latency_ms, int repetition);

// Runs every (pairs, latency, repetition) in that nesting order and hands
// each record to `sink` as soon as it exists.
std::vector<MetricsRecord> run_experiment(const ExperimentConfig& cfg,
                                          const std::function<void(const MetricsRecord&)>& sink = {});

struct Quartiles {
  double mean = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
};

// Linear-interpolated quartiles; throws on an empty sample.
Quartiles summarize(std::vector<double> sample);

// One CSV row per (pairs, latency): runtime and traffic statistics.
std::string summary_csv(const std::vector<MetricsRecord>& records);

}  // namespace kepmpc::bench
