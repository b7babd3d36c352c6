#include <algorithm>
#include <array>
#include <cmath>

#include "doctest.h"
#include "kepmpc/bench/experiment.hpp"
#include "kepmpc/plain/kep_oracle.hpp"

using namespace kepmpc;

TEST_CASE("pair generation is deterministic") {
  CHECK(bench::generate_pairs(20, 5) == bench::generate_pairs(20, 5));
  CHECK(bench::generate_pairs(20, 5) != bench::generate_pairs(20, 6));
  for (const auto& q : bench::generate_pairs(50, 1)) CHECK_NOTHROW(q.validate());
}

TEST_CASE("instances of one seed family are nested") {
  const auto big = bench::generate_pairs(12, bench::instance_seed(9, 3));
  const auto small = bench::generate_pairs(5, bench::instance_seed(9, 3));
  CHECK(std::equal(small.begin(), small.end(), big.begin()));
  CHECK(bench::instance_seed(9, 3) != bench::instance_seed(9, 4));
  CHECK(bench::instance_seed(9, 3) != bench::instance_seed(10, 3));
}

TEST_CASE("bloodtype frequencies follow the configured distribution") {
  bench::PairDistribution dist;
  const auto quotes = bench::generate_pairs(10000, 17, dist);
  std::array<double, 4> count{};
  for (const auto& q : quotes) {
    for (std::size_t k = 0; k < 4; ++k) count[k] += q.donor_bloodtype[k];
  }
  for (std::size_t k = 0; k < 4; ++k) {
    CAPTURE(k);
    CHECK(std::abs(count[k] / 10000.0 - dist.bloodtype[k]) <= 0.02);
  }
}

TEST_CASE("without sensitization compatibility is pure ABO") {
  bench::PairDistribution dist;
  dist.sensitization_rate = 0.0;
  const auto quotes = bench::generate_pairs(30, 4, dist);
  for (const auto& from : quotes) {
    for (const auto& to : quotes) {
      bool abo = false;
      for (std::size_t k = 0; k < 4; ++k) abo = abo || (from.donor_bloodtype[k] && to.patient_accepts[k]);
      CHECK(compatible(from, to) == abo);
    }
  }
}

TEST_CASE("ABO rules for patient acceptance") {
  CHECK(acceptable_donors(Bloodtype::kO) == std::vector<std::uint8_t>{1, 0, 0, 0});
  CHECK(acceptable_donors(Bloodtype::kA) == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(acceptable_donors(Bloodtype::kB) == std::vector<std::uint8_t>{1, 0, 1, 0});
  CHECK(acceptable_donors(Bloodtype::kAB) == std::vector<std::uint8_t>{1, 1, 1, 1});
}

TEST_CASE("quartiles") {
  const auto q = bench::summarize({4, 1, 3, 2, 5});
  CHECK(q.mean == doctest::Approx(3.0));
  CHECK(q.q1 == doctest::Approx(2.0));
  CHECK(q.median == doctest::Approx(3.0));
  CHECK(q.q3 == doctest::Approx(4.0));
  CHECK(bench::summarize({1, 2}).median == doctest::Approx(1.5));
  CHECK_THROWS(bench::summarize({}));
}

TEST_CASE("smoke experiment") {
  bench::ExperimentConfig cfg;
  cfg.pairs = {4};
  cfg.repetitions = 3;
  cfg.latencies_ms = {1.0};
  std::size_t streamed = 0;
  const auto records = bench::run_experiment(cfg, [&](const bench::MetricsRecord&) { ++streamed; });
  REQUIRE(records.size() == 3);
  CHECK(streamed == 3);
  for (const auto& r : records) {
    CHECK(r.verified);
    REQUIRE(r.oracle_transplants.has_value());
    CHECK(*r.oracle_transplants == r.transplants);
    CHECK(r.nodes == r.trace.nodes.size());
    const auto j = to_json(r);
    for (const char* key : {"pairs", "latency_ms", "simulated_seconds", "bytes_sent", "nodes", "iterations",
                            "transplants", "oracle_transplants", "verified", "trace"}) {
      CHECK(j.contains(key));
    }
  }
  const std::string csv = bench::summary_csv(records);
  CHECK(csv.find("pairs,cycle_size,latency_ms,runs") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);

  cfg.repetitions = 0;
  CHECK_THROWS_AS(bench::run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("latency delays but never changes results") {
  bench::ExperimentConfig cfg;
  cfg.pairs = {5};
  cfg.repetitions = 2;
  cfg.latencies_ms = {1.0, 5.0, 10.0};
  cfg.seed = 3;
  const auto rs = bench::run_experiment(cfg);
  REQUIRE(rs.size() == 6);
  for (int rep = 0; rep < 2; ++rep) {
    const auto& a = rs[rep];
    const auto& b = rs[2 + rep];
    const auto& c = rs[4 + rep];
    CHECK(a.transplants == b.transplants);
    CHECK(a.transplants == c.transplants);
    CHECK(a.trace == b.trace);
    CHECK(a.trace == c.trace);
    CHECK(a.bytes_sent == b.bytes_sent);
    CHECK(a.rounds == c.rounds);
    CHECK(a.simulated_seconds < b.simulated_seconds);
    CHECK(b.simulated_seconds < c.simulated_seconds);
  }
}

TEST_CASE("traffic grows with the pair count") {
  bench::ExperimentConfig cfg;
  cfg.pairs = {4, 6};
  cfg.repetitions = 3;
  cfg.latencies_ms = {1.0};
  const auto rs = bench::run_experiment(cfg);
  double small = 0;
  double large = 0;
  for (const auto& r : rs) (r.pairs == 4 ? small : large) += static_cast<double>(r.bytes_sent);
  CHECK(large > small);
}

TEST_CASE("network-only clock is rounds times latency") {
  bench::ExperimentConfig cfg;
  cfg.charge_compute = false;
  const auto r = bench::run_instance(cfg, 4, 2.0, 0);
  CHECK(r.simulated_seconds == doctest::Approx(static_cast<double>(r.rounds) * 0.002));
  cfg.charge_compute = true;
  const auto c = bench::run_instance(cfg, 4, 2.0, 0);
  CHECK(c.simulated_seconds > r.simulated_seconds);
  CHECK(c.rounds == r.rounds);
}
