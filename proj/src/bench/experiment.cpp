#include "kepmpc/bench/experiment.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "kepmpc/kep/pipeline.hpp"
#include "kepmpc/plain/kep_oracle.hpp"

namespace kepmpc::bench {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (pairs.empty()) throw std::invalid_argument("no pair counts given");
  for (int p : pairs) {
    if (p < 2) throw std::invalid_argument("pair count must be at least 2");
  }
  if (max_cycle < 2) throw std::invalid_argument("cycle size must be at least 2");
  if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
  if (latencies_ms.empty()) throw std::invalid_argument("no latencies given");
  for (double l : latencies_ms) {
    if (l < 0.0) throw std::invalid_argument("latency must be non-negative");
  }
  distribution.validate();
}

nlohmann::json to_json(const MetricsRecord& r) {
  nlohmann::json j{{"pairs", r.pairs},
                   {"cycle_size", r.max_cycle},
                   {"latency_ms", r.latency_ms},
                   {"repetition", r.repetition},
                   {"instance_seed", r.instance_seed},
                   {"wall_seconds", r.wall_seconds},
                   {"simulated_seconds", r.simulated_seconds},
                   {"bytes_sent", r.bytes_sent},
                   {"rounds", r.rounds},
                   {"nodes", r.nodes},
                   {"iterations", r.iterations},
                   {"transplants", r.transplants},
                   {"oracle_transplants", nullptr},
                   {"verified", r.verified},
                   {"trace", to_json(r.trace)}};
  if (r.oracle_transplants) j["oracle_transplants"] = *r.oracle_transplants;
  return j;
}

std::uint64_t instance_seed(std::uint64_t seed, int repetition) {
  return splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(repetition));
}

MetricsRecord run_instance(const ExperimentConfig& cfg, int pairs, double latency_ms, int repetition) {
  MetricsRecord rec;
  rec.pairs = pairs;
  rec.max_cycle = cfg.max_cycle;
  rec.latency_ms = latency_ms;
  rec.repetition = repetition;
  rec.instance_seed = instance_seed(cfg.seed, repetition);

  const auto quotes = generate_pairs(pairs, rec.instance_seed, cfg.distribution);
  SessionConfig session;
  session.latency_ms = latency_ms;
  session.transport = cfg.transport;
  session.charge_compute = cfg.charge_compute;
  session.seed = splitmix(rec.instance_seed);
  kep::KepParams params;
  params.max_cycle = cfg.max_cycle;
  const auto run = kep::solve_kep(session, quotes, params, splitmix(session.seed));

  rec.wall_seconds = run.wall_seconds;
  rec.simulated_seconds = run.simulated_seconds;
  for (const auto& t : run.traffic) {
    rec.bytes_sent = std::max(rec.bytes_sent, t.bytes_sent);
    rec.rounds = std::max(rec.rounds, t.rounds);
  }
  rec.nodes = run.trace.nodes.size();
  rec.iterations = run.trace.total_iterations();
  rec.transplants = run.transplants();
  rec.trace = run.trace;

  const Digraph g = compatibility_graph(quotes);
  std::string why;
  if (!verify_solution(run.donor, run.recipient, g, cfg.max_cycle, &why)) {
    throw VerificationError("invalid exchange for " + std::to_string(pairs) + " pairs: " + why, rec.instance_seed);
  }
  if (pairs <= cfg.oracle_cap) {
    rec.oracle_transplants = brute_force_kep(g, cfg.max_cycle).transplants;
    if (*rec.oracle_transplants != rec.transplants) {
      throw VerificationError("protocol found " + std::to_string(rec.transplants) + " transplants, oracle " +
                                  std::to_string(*rec.oracle_transplants),
                              rec.instance_seed);
    }
  }
  rec.verified = true;
  return rec;
}

std::vector<MetricsRecord> run_experiment(const ExperimentConfig& cfg,
                                          const std::function<void(const MetricsRecord&)>& sink) {
  cfg.validate();
  std::vector<MetricsRecord> out;
  for (int pairs : cfg.pairs) {
    for (double latency : cfg.latencies_ms) {
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        out.push_back(run_instance(cfg, pairs, latency, rep));
        if (sink) sink(out.back());
      }
    }
  }
  return out;
}

Quartiles summarize(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::sort(sample.begin(), sample.end());
  Quartiles q;
  q.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
  q.q1 = quantile(sample, 0.25);
  q.median = quantile(sample, 0.5);
  q.q3 = quantile(sample, 0.75);
  return q;
}

std::string summary_csv(const std::vector<MetricsRecord>& records) {
  std::map<std::pair<int, double>, std::vector<const MetricsRecord*>> groups;
  for (const auto& r : records) groups[{r.pairs, r.latency_ms}].push_back(&r);

  std::ostringstream out;
  out << "pairs,cycle_size,latency_ms,runs,sim_mean,sim_q1,sim_median,sim_q3,wall_mean,bytes_mean,bytes_q1,"
         "bytes_median,bytes_q3,nodes_mean,iterations_mean,transplants_mean\n";
  for (const auto& [key, rs] : groups) {
    std::vector<double> sim;
    std::vector<double> wall;
    std::vector<double> bytes;
    double nodes = 0;
    double iters = 0;
    double tx = 0;
    for (const auto* r : rs) {
      sim.push_back(r->simulated_seconds);
      wall.push_back(r->wall_seconds);
      bytes.push_back(static_cast<double>(r->bytes_sent));
      nodes += static_cast<double>(r->nodes);
      iters += static_cast<double>(r->iterations);
      tx += r->transplants;
    }
    const double n = static_cast<double>(rs.size());
    const auto s = summarize(sim);
    const auto b = summarize(bytes);
    out << key.first << ',' << rs.front()->max_cycle << ',' << key.second << ',' << rs.size() << ',' << s.mean << ','
        << s.q1 << ',' << s.median << ',' << s.q3 << ',' << summarize(wall).mean << ',' << b.mean << ',' << b.q1
        << ',' << b.median << ',' << b.q3 << ',' << nodes / n << ',' << iters / n << ',' << tx / n << '\n';
  }
  return out.str();
}

}  // namespace kepmpc::bench
