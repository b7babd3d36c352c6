#include "kepmpc/runtime/run.hpp"

namespace kepmpc::detail {

Network::Network(const SessionConfig& cfg) {
  if (cfg.transport == TransportKind::kSocket) {
    socket_ = std::make_unique<SocketNetwork>(cfg.peers, cfg.field);
  } else {
    inproc_ = std::make_unique<InProcessNetwork>(cfg.peers);
  }
}

std::unique_ptr<Transport> Network::endpoint(PartyId id) {
  return socket_ ? socket_->endpoint(id) : inproc_->endpoint(id);
}

void Network::abort() {
  if (socket_) socket_->abort();
  if (inproc_) inproc_->abort();
}

Transcript merge_transcripts(const std::vector<Transcript>& per_peer) {
  if (per_peer.empty()) return {};
  for (std::size_t i = 1; i < per_peer.size(); ++i) {
    if (!(per_peer[i] == per_peer[0])) {
      throw ConsistencyError("peers 1 and " + std::to_string(i + 1) +
                             " recorded different openings");
    }
  }
  return per_peer[0];
}

}  // namespace kepmpc::detail

namespace kepmpc {

std::vector<Shares> deal(const SessionConfig& cfg, const std::vector<BigInt>& values, Rng& rng) {
  std::vector<Shares> out(cfg.peers);
  for (auto& v : out) v.reserve(values.size());
  for (const auto& x : values) {
    const auto s = share(*cfg.field, x, cfg.sharing(), rng, cfg.value_bits);
    for (int i = 0; i < cfg.peers; ++i) out[i].push_back(s[i].point);
  }
  return out;
}

std::vector<Shares> deal(const SessionConfig& cfg, const std::vector<std::int64_t>& values, Rng& rng) {
  std::vector<BigInt> big(values.begin(), values.end());
  return deal(cfg, big, rng);
}

std::vector<BigInt> reveal(const SessionConfig& cfg, const std::vector<Shares>& outputs) {
  if (static_cast<int>(outputs.size()) != cfg.peers) throw std::invalid_argument("need one share vector per peer");
  const std::size_t n = outputs[0].size();
  for (const auto& o : outputs) {
    if (o.size() != n) throw ConsistencyError("peers returned outputs of different lengths");
  }
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<SecretShare> s;
    for (int i = 0; i < cfg.peers; ++i) s.push_back({i + 1, outputs[i][k]});
    const FieldElement v = reconstruct(s, cfg.threshold);
    // Every further share must agree with the first t+1.
    for (int drop = 0; drop + cfg.threshold + 1 < cfg.peers; ++drop) {
      std::vector<SecretShare> alt(s.begin() + drop + 1, s.end());
      if (!(reconstruct(alt, cfg.threshold) == v)) throw ConsistencyError("output shares are inconsistent");
    }
    out.push_back(v.to_signed());
  }
  return out;
}

std::vector<std::int64_t> reveal_int(const SessionConfig& cfg, const std::vector<Shares>& outputs) {
  std::vector<std::int64_t> out;
  for (const auto& v : reveal(cfg, outputs)) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

}  // namespace kepmpc
