#include "kepmpc/bench/generate.hpp"

#include <random>
#include <stdexcept>

namespace kepmpc::bench {

void PairDistribution::validate() const {
  double total = 0.0;
  for (double p : bloodtype) {
    if (p < 0.0) throw std::invalid_argument("bloodtype probabilities must be non-negative");
    total += p;
  }
  if (total <= 0.0) throw std::invalid_argument("bloodtype probabilities sum to zero");
  for (double r : {antigen_rate, sensitization_rate}) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("rates must lie in [0, 1]");
  }
}

std::vector<MedicalQuote> generate_pairs(int pairs, std::uint64_t seed, const PairDistribution& dist) {
  dist.validate();
  if (pairs < 0) throw std::invalid_argument("negative pair count");
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> abo(dist.bloodtype.begin(), dist.bloodtype.end());
  std::bernoulli_distribution antigen(dist.antigen_rate);
  std::bernoulli_distribution antibody(dist.sensitization_rate);

  std::vector<MedicalQuote> out;
  out.reserve(static_cast<std::size_t>(pairs));
  for (int i = 0; i < pairs; ++i) {
    MedicalQuote q;
    q.donor_bloodtype.assign(kBloodtypes, 0);
    q.donor_bloodtype[static_cast<std::size_t>(abo(rng))] = 1;
    q.patient_accepts = acceptable_donors(static_cast<Bloodtype>(abo(rng)));
    for (std::size_t k = 0; k < dist.hla_length; ++k) q.donor_antigens.push_back(antigen(rng) ? 1 : 0);
    for (std::size_t k = 0; k < dist.hla_length; ++k) q.patient_antibodies.push_back(antibody(rng) ? 1 : 0);
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<MedicalQuote> quotes_for_graph(const Digraph& g, std::size_t hla_length) {
  if (hla_length < static_cast<std::size_t>(g.n)) throw std::invalid_argument("HLA length below the pair count");
  std::vector<MedicalQuote> out(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) {
    auto& q = out[i];
    q.donor_bloodtype = {1, 0, 0, 0};
    q.patient_accepts = acceptable_donors(Bloodtype::kO);
    q.donor_antigens.assign(hla_length, 0);
    q.donor_antigens[i] = 1;
    q.patient_antibodies.assign(hla_length, 0);
    for (int from = 0; from < g.n; ++from) {
      if (from != i && !g.has(from, i)) q.patient_antibodies[from] = 1;
    }
  }
  return out;
}

}  // namespace kepmpc::bench
