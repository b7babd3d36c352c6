// Synthetic patient-donor pairs.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "kepmpc/kep/quote.hpp"

namespace kepmpc::bench {

struct PairDistribution {
  // Probabilities of O, A, B, AB for donors and patients alike.
  std::array<double, 4> bloodtype{0.44, 0.42, 0.10, 0.04};
  std::size_t hla_length = kDefaultHlaLength;
  // Per-antigen probability on the donor side.
  double antigen_rate = 0.25;
  // Per-antibody probability on the patient side.
  double sensitization_rate = 0.10;

  void validate() const;
};

// Deterministic in (pairs, seed, dist).
std::vector<MedicalQuote> generate_pairs(int pairs, std::uint64_t seed, const PairDistribution& dist = {});

// Quotes whose compatibility graph is exactly g: every pair has blood group
// O, donor i carries antigen i, and patient j has an antibody against
// antigen i unless i -> j is an edge. hla_length must be at least g.n.
std::vector<MedicalQuote> quotes_for_graph(const Digraph& g, std::size_t hla_length = kDefaultHlaLength);

}  // namespace kepmpc::bench
