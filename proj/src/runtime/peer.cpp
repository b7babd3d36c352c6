#include "kepmpc/runtime/peer.hpp"

#include <bit>
#include <ctime>
#include <random>

namespace kepmpc {

namespace {

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

constexpr std::uint64_t kPrssSalt = 0x70727373;
constexpr std::uint64_t kGroupSalt = 0x67727570;

bool has(unsigned subset, PartyId p) { return (subset >> (p - 1)) & 1u; }

PartyId lowest(unsigned subset) { return std::countr_zero(subset) + 1; }

Rng derive(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return Rng(seq);
}

}  // namespace

Peer::Peer(const SessionConfig& cfg, PartyId id, std::unique_ptr<Transport> link)
    : cfg_(cfg), id_(id), link_(std::move(link)) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(id)};
  local_rng_.seed(seq);

  const PrimeField& f = field();
  const int n = parties();
  const int t = threshold();

  std::vector<PartyId> all;
  for (PartyId i = 1; i <= n; ++i) all.push_back(i);
  const auto lambda = lagrange_at_zero(f, all);
  std::int64_t binom = 1;
  for (PartyId j = 1; j <= n; ++j) {
    binom = binom * (n - j + 1) / j;
    lambda_all_.push_back(j % 2 == 1 ? binom : -binom);
    if (!(f.from_int(lambda_all_.back()) == lambda[j - 1])) throw std::logic_error("recombination weights mismatch");
  }
  lambda_first_ = lagrange_at_zero(f, std::span<const PartyId>(all).first(t + 1));

  // Interpolation weights from parties 1..t+1 to every other party.
  check_.assign(n, {});
  for (PartyId j = t + 2; j <= n; ++j) {
    for (PartyId i = 1; i <= t + 1; ++i) {
      FieldElement num = f.one();
      FieldElement den = f.one();
      for (PartyId k = 1; k <= t + 1; ++k) {
        if (k == i) continue;
        num *= f.from_int(j - k);
        den *= f.from_int(i - k);
      }
      check_[j - 1].push_back(num * den.inverse());
    }
  }

  exchange_seeds();
  stats_ = {};
  cpu_mark_ = thread_cpu_seconds();
}

void Peer::exchange_seeds() {
  const PrimeField& f = field();
  const int n = parties();
  const int t = threshold();
  const unsigned full = (1u << n) - 1;

  // Masks needing a seed, in increasing order: key subsets of size n-t and
  // groups of size t+1.
  std::vector<unsigned> masks;
  for (unsigned m = 1; m <= full; ++m) {
    const int pc = std::popcount(m);
    if (pc == n - t || pc == t + 1) masks.push_back(m);
  }

  std::vector<Payload> out(n);
  std::map<unsigned, std::uint64_t> seeds;
  for (unsigned m : masks) {
    if (!has(m, id_) || lowest(m) != id_) continue;
    const std::uint64_t s = local_rng_();
    seeds[m] = s;
    for (PartyId j = 1; j <= n; ++j) {
      if (j != id_ && has(m, j)) out[j - 1].push_back(f.from_uint(s));
    }
  }
  const auto in = round(std::move(out));
  std::vector<std::size_t> pos(n, 0);
  for (unsigned m : masks) {
    if (!has(m, id_)) continue;
    const PartyId owner = lowest(m);
    if (owner == id_) continue;
    const Payload& from = in[owner - 1];
    if (pos[owner - 1] >= from.size()) throw ConsistencyError("missing session seed");
    const BigInt v = from[pos[owner - 1]++].to_big();
    seeds[m] = static_cast<std::uint64_t>(v);
  }

  for (unsigned m : masks) {
    const int pc = std::popcount(m);
    if (pc == n - t) {
      PrssKey key{m, has(m, id_), f.zero(), Rng{}};
      if (key.member) {
        // f_A(x) = prod_{j not in A} (j - x) / j
        FieldElement w = f.one();
        for (PartyId j = 1; j <= n; ++j) {
          if (has(m, j)) continue;
          w *= f.from_int(j - id_) * f.from_int(j).inverse();
        }
        key.weight = w;
        key.rng = derive(seeds.at(m), kPrssSalt);
      }
      prss_keys_.push_back(std::move(key));
    }
    if (pc == t + 1) {
      groups_.push_back(m);
      if (has(m, id_)) group_rngs_.emplace(m, derive(seeds.at(m), kGroupSalt));
    }
  }
}

std::vector<Payload> Peer::round(std::vector<Payload> outgoing) {
  const int n = parties();
  const double cpu = thread_cpu_seconds();
  stats_.compute_seconds += cpu - cpu_mark_;
  if (cfg_.charge_compute) stats_.simulated_seconds += cpu - cpu_mark_;
  outgoing.resize(n);
  std::uint64_t bytes = 0;
  bool active = false;
  for (int j = 0; j < n; ++j) {
    if (j == id_ - 1) {
      outgoing[j].clear();
      continue;
    }
    if (!outgoing[j].empty()) {
      bytes += 4 + outgoing[j].size() * field().byte_width();
      ++stats_.messages_sent;
      active = true;
    }
  }
  auto incoming = link_->exchange(std::move(outgoing));
  cpu_mark_ = thread_cpu_seconds();
  for (int j = 0; j < n; ++j) {
    if (j != id_ - 1 && !incoming[j].empty()) active = true;
  }
  if (active) {
    ++stats_.rounds;
    stats_.bytes_sent += bytes;
    double delay = cfg_.latency_ms / 1000.0;
    if (cfg_.bandwidth_bps > 0) delay += static_cast<double>(bytes) * 8.0 / cfg_.bandwidth_bps;
    stats_.simulated_seconds += delay;
  }
  return incoming;
}

Shares Peer::random_elements(std::size_t n) {
  const PrimeField& f = field();
  Shares out(n, f.zero());
  for (auto& key : prss_keys_) {
    if (!key.member) continue;
    for (std::size_t k = 0; k < n; ++k) out[k] += f.random(key.rng) * key.weight;
  }
  return out;
}

Shares Peer::random_bounded(std::size_t n, unsigned bits) {
  const PrimeField& f = field();
  if (bits >= f.bits()) throw std::invalid_argument("mask width exceeds the field");
  Shares out(n, f.zero());
  for (auto& key : prss_keys_) {
    if (!key.member) continue;
    for (std::size_t k = 0; k < n; ++k) {
      Limbs r{};
      for (unsigned w = 0; w * 64 < bits; ++w) {
        const unsigned take = bits - w * 64 < 64 ? bits - w * 64 : 64;
        r[w] = key.rng();
        if (take < 64) r[w] &= (std::uint64_t{1} << take) - 1;
      }
      out[k] += FieldElement(&f, f.to_mont(r)) * key.weight;
    }
  }
  return out;
}

std::vector<Shares> Peer::random_bit_parts(std::size_t n) {
  const PrimeField& f = field();
  std::vector<Shares> out;
  out.reserve(prss_keys_.size());
  for (auto& key : prss_keys_) {
    Shares part(n, f.zero());
    if (key.member) {
      std::uint64_t word = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k % 64 == 0) word = key.rng();
        if ((word >> (k % 64)) & 1u) part[k] = key.weight;
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

Rng& Peer::group_rng(unsigned subset) {
  auto it = group_rngs_.find(subset);
  if (it == group_rngs_.end()) throw std::logic_error("peer is not a member of the requested group");
  return it->second;
}

std::vector<FieldElement> Peer::reconstruct_all(const std::vector<Payload>& incoming, const Shares& mine,
                                                std::size_t count) const {
  const PrimeField& f = field();
  const int n = parties();
  const int t = threshold();
  auto share_of = [&](PartyId p, std::size_t k) -> const FieldElement& {
    return p == id_ ? mine[k] : incoming[p - 1][k];
  };
  for (PartyId p = 1; p <= n; ++p) {
    const std::size_t have = p == id_ ? mine.size() : incoming[p - 1].size();
    if (have < count) throw ConsistencyError("peer " + std::to_string(p) + " sent too few shares");
  }
  std::vector<FieldElement> out(count, f.zero());
  for (std::size_t k = 0; k < count; ++k) {
    for (PartyId i = 1; i <= t + 1; ++i) out[k] += lambda_first_[i - 1] * share_of(i, k);
    for (PartyId j = t + 2; j <= n; ++j) {
      FieldElement expect = f.zero();
      for (PartyId i = 1; i <= t + 1; ++i) expect += check_[j - 1][i - 1] * share_of(i, k);
      if (!(expect == share_of(j, k))) {
        throw ConsistencyError("shares of an opened value are inconsistent (peer " + std::to_string(j) + ")");
      }
    }
  }
  return out;
}

}  // namespace kepmpc
