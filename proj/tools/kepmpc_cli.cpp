// kepmpc: generate synthetic pairs, solve one exchange, or run a benchmark
// sweep. Exit status 1 means a result failed verification, 2 bad input.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kepmpc/bench/experiment.hpp"
#include "kepmpc/kep/pipeline.hpp"

using namespace kepmpc;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kBadInput = 2;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void add_distribution(CLI::App* cmd, bench::PairDistribution& d) {
  cmd->add_option("--hla-length", d.hla_length, "Antigen/antibody vector length")->capture_default_str();
  cmd->add_option("--antigen-rate", d.antigen_rate, "Per-antigen donor probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--sensitization", d.sensitization_rate, "Per-antibody patient probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

int run_generate(int pairs, std::uint64_t seed, const bench::PairDistribution& dist, const std::string& format,
                 const std::string& out_path) {
  const auto quotes = bench::generate_pairs(pairs, seed, dist);
  const std::string text = format == "json" ? to_json(quotes).dump(2) + "\n" : to_text(quotes);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    open_out(out_path) << text;
  }
  return 0;
}

int run_solve(const std::string& input, int cycle_size, double latency, TransportKind transport, std::uint64_t seed,
              int oracle_cap, const std::string& out_path) {
  const auto quotes = read_quotes(input);
  if (quotes.size() < 2) throw QuoteFormatError("need at least 2 pairs");
  SessionConfig cfg;
  cfg.latency_ms = latency;
  cfg.transport = transport;
  cfg.seed = seed;
  kep::KepParams params;
  params.max_cycle = cycle_size;
  const auto run = kep::solve_kep(cfg, quotes, params, seed + 1);

  auto j = to_json(run);
  const Digraph g = compatibility_graph(quotes);
  std::string why;
  bool ok = verify_solution(run.donor, run.recipient, g, cycle_size, &why);
  if (static_cast<int>(quotes.size()) <= oracle_cap) {
    const int best = brute_force_kep(g, cycle_size).transplants;
    j["oracle_transplants"] = best;
    if (best != run.transplants()) {
      ok = false;
      why = "oracle finds " + std::to_string(best) + " transplants";
    }
  }
  j["verified"] = ok;
  if (out_path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    open_out(out_path) << j.dump(2) << '\n';
  }
  if (!ok) {
    std::cerr << "verification failed: " << why << '\n';
    return kVerifyFailed;
  }
  return 0;
}

int run_bench(const bench::ExperimentConfig& cfg, const std::string& out_path, const std::string& summary_path) {
  std::ofstream jsonl;
  if (!out_path.empty()) jsonl = open_out(out_path);
  std::vector<bench::MetricsRecord> records;
  try {
    records = bench::run_experiment(cfg, [&](const bench::MetricsRecord& r) {
      if (jsonl.is_open()) jsonl << to_json(r).dump() << '\n' << std::flush;
      std::cerr << "pairs=" << r.pairs << " latency=" << r.latency_ms << "ms rep=" << r.repetition
                << " transplants=" << r.transplants << " nodes=" << r.nodes << " sim=" << r.simulated_seconds << "s\n";
    });
  } catch (const bench::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << " (reproduce the pairs with: generate --seed " << e.seed() << ")\n";
    return kVerifyFailed;
  }
  const std::string csv = bench::summary_csv(records);
  if (!summary_path.empty()) {
    open_out(summary_path) << csv;
  } else if (!out_path.empty()) {
    open_out(out_path + ".summary.csv") << csv;
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving kidney exchange over secret sharing"};
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write synthetic patient-donor pairs");
  int gen_pairs = 6;
  std::uint64_t gen_seed = 1;
  std::string gen_format = "text";
  std::string gen_out;
  bench::PairDistribution gen_dist;
  gen->add_option("--pairs", gen_pairs, "Number of pairs")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--format", gen_format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default stdout)");
  add_distribution(gen, gen_dist);

  // solve
  auto* solve = app.add_subcommand("solve", "Run the protocol on pairs from a file");
  std::string solve_in;
  int solve_cycle = 3;
  double solve_latency = 0.0;
  std::string solve_transport = "inproc";
  std::uint64_t solve_seed = 1;
  int solve_cap = 10;
  std::string solve_out;
  solve->add_option("input", solve_in, "Pairs file, text or JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--cycle-size", solve_cycle, "Maximum cycle length")->check(CLI::Range(2, 16))->capture_default_str();
  solve->add_option("--latency-ms", solve_latency, "Simulated link latency")->capture_default_str();
  solve->add_option("--transport", solve_transport, "inproc or socket")
      ->check(CLI::IsMember({"inproc", "socket"}))
      ->capture_default_str();
  solve->add_option("--seed", solve_seed, "Session seed")->capture_default_str();
  solve->add_option("--oracle-cap", solve_cap, "Brute-force check up to this many pairs")->capture_default_str();
  solve->add_option("--out", solve_out, "Output JSON file (default stdout)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Repeated runs over pair counts and latencies");
  bench::ExperimentConfig ecfg;
  std::string bench_out;
  std::string bench_summary;
  std::string bench_transport = "inproc";
  bench_cmd->add_option("--pairs", ecfg.pairs, "Pair counts, e.g. 4,6,8")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--cycle-size", ecfg.max_cycle, "Maximum cycle length")
      ->check(CLI::Range(2, 16))
      ->capture_default_str();
  bench_cmd->add_option("--reps", ecfg.repetitions, "Repetitions per setting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--latency-ms", ecfg.latencies_ms, "Latencies, e.g. 1,5,10")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--transport", bench_transport, "inproc or socket")
      ->check(CLI::IsMember({"inproc", "socket"}))
      ->capture_default_str();
  bench_cmd->add_option("--seed", ecfg.seed, "Experiment seed")->capture_default_str();
  bench_cmd->add_option("--oracle-cap", ecfg.oracle_cap, "Brute-force check up to this many pairs")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "JSON-lines record file; summary goes to <out>.summary.csv");
  bench_cmd->add_option("--summary", bench_summary, "Summary CSV file");
  bench_cmd->add_flag("!--no-compute", ecfg.charge_compute, "Simulated clock counts network delay only");
  add_distribution(bench_cmd, ecfg.distribution);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kBadInput;
  }

  try {
    if (*gen) return run_generate(gen_pairs, gen_seed, gen_dist, gen_format, gen_out);
    if (*solve) {
      return run_solve(solve_in, solve_cycle, solve_latency, parse_transport(solve_transport), solve_seed, solve_cap,
                       solve_out);
    }
    ecfg.transport = parse_transport(bench_transport);
    return run_bench(ecfg, bench_out, bench_summary);
  } catch (const QuoteFormatError& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}
