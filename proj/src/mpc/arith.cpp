#include <stdexcept>

#include "kepmpc/mpc/primitives.hpp"

namespace kepmpc::mpc {

namespace {

void check_same(const Shares& x, const Shares& y) {
  if (x.size() != y.size()) throw std::invalid_argument("share vectors differ in length");
}

// Sends the same payload to every other peer.
std::vector<Payload> broadcast(Peer& peer, const Payload& p) {
  std::vector<Payload> out(peer.parties());
  for (int j = 0; j < peer.parties(); ++j) {
    if (j != peer.id() - 1) out[j] = p;
  }
  return peer.round(std::move(out));
}

}  // namespace

Shares ShareMatrix::row(std::size_t i) const {
  return Shares(data.begin() + static_cast<std::ptrdiff_t>(i * cols),
                data.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
}

Shares ShareMatrix::column(std::size_t j) const {
  Shares out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) out.push_back(at(i, j));
  return out;
}

Shares add(const Shares& x, const Shares& y) {
  check_same(x, y);
  Shares out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

Shares sub(const Shares& x, const Shares& y) {
  check_same(x, y);
  Shares out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= y[i];
  return out;
}

Shares scale(const FieldElement& a, const Shares& x) {
  Shares out(x);
  for (auto& v : out) v *= a;
  return out;
}

Shares linear(const FieldElement& a, const Shares& x, const FieldElement& b, const Shares& y) {
  check_same(x, y);
  Shares out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

FieldElement sum(const Shares& x) {
  if (x.empty()) throw std::invalid_argument("sum of an empty share vector has no field");
  FieldElement acc = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) acc += x[i];
  return acc;
}

Shares reduce(Peer& peer, const Shares& h) {
  const std::size_t n = h.size();
  if (n == 0) return {};
  const PrimeField& f = peer.field();
  const int kappa = peer.parties();
  const int t = peer.threshold();
  const PartyId me = peer.id();

  Shares coeffs(n * t);
  for (auto& c : coeffs) c = f.random(peer.local_rng());
  Shares evals(kappa * n);
  kernels::reshare_evaluate(peer.kernel_mode(), h, coeffs, t, kappa, evals);

  std::vector<Payload> out(kappa);
  for (int j = 0; j < kappa; ++j) {
    if (j == me - 1) continue;
    out[j].assign(evals.begin() + static_cast<std::ptrdiff_t>(j * n),
                  evals.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
  }
  const auto in = peer.round(std::move(out));
  for (int j = 0; j < kappa; ++j) {
    if (j == me - 1) continue;
    if (in[j].size() != n) throw ConsistencyError("resharing batch has the wrong size");
    std::copy(in[j].begin(), in[j].end(), evals.begin() + static_cast<std::ptrdiff_t>(j * n));
  }
  Shares res(n);
  kernels::recombine(peer.kernel_mode(), evals, peer.recombination(), kappa, res);
  peer.stats().multiplications += n;
  return res;
}

Shares mul(Peer& peer, const Shares& x, const Shares& y) {
  check_same(x, y);
  Shares h(x.size());
  kernels::products(peer.kernel_mode(), x, y, h);
  return reduce(peer, h);
}

Shares dots(Peer& peer, const Shares& x, const Shares& y, const std::vector<std::size_t>& offsets) {
  check_same(x, y);
  if (offsets.empty() || offsets.back() != x.size()) throw std::invalid_argument("dot offsets do not cover input");
  Shares h(offsets.size() - 1, peer.field().zero());
  kernels::dots(peer.kernel_mode(), x, y, offsets, h);
  return reduce(peer, h);
}

Shares cond_select(Peer& peer, const Shares& b, const Shares& x, const Shares& y) {
  return add(mul(peer, b, sub(x, y)), y);
}

std::vector<FieldElement> open(Peer& peer, const Shares& x, OpenLabel label) {
  Payload p(x);
  p.push_back(peer.field().from_uint(static_cast<std::uint64_t>(label)));
  const auto in = broadcast(peer, p);
  for (int j = 0; j < peer.parties(); ++j) {
    if (j == peer.id() - 1) continue;
    if (in[j].size() != p.size()) throw ConsistencyError("peers opened batches of different sizes");
    if (!(in[j].back() == p.back())) {
      throw ConsistencyError("peer " + std::to_string(j + 1) + " opened under a different label");
    }
  }
  auto values = peer.reconstruct_all(in, x, x.size());
  OpeningEvent e;
  e.label = label;
  e.values.reserve(values.size());
  for (const auto& v : values) e.values.push_back(v.to_signed());
  peer.transcript().record(std::move(e));
  return values;
}

std::vector<FieldElement> reveal_masked(Peer& peer, const Shares& x) {
  if (x.empty()) return {};
  const auto in = broadcast(peer, x);
  peer.stats().masked_reveals += x.size();
  return peer.reconstruct_all(in, x, x.size());
}

void release_output(Peer& peer, std::size_t count) {
  OpeningEvent e;
  e.label = OpenLabel::kFinalOutput;
  e.released = count;
  peer.transcript().record(std::move(e));
}

Shares random_bits(Peer& peer, std::size_t n) {
  if (n == 0) return {};
  auto parts = peer.random_bit_parts(n);
  Shares acc = std::move(parts[0]);
  // a xor b = a + b - 2ab
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Shares ab = mul(peer, acc, parts[k]);
    for (std::size_t i = 0; i < n; ++i) acc[i] = acc[i] + parts[k][i] - ab[i].times(2);
  }
  return acc;
}

Shares inverse(Peer& peer, const Shares& x) {
  if (x.empty()) return {};
  const Shares r = peer.random_elements(x.size());
  const auto masked = reveal_masked(peer, mul(peer, r, x));
  Shares out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    // A zero here means x = 0 or (with negligible probability) r = 0.
    if (masked[i].is_zero()) throw FieldError("inverse of a secret that is zero");
    out[i] = r[i] * masked[i].inverse();
  }
  return out;
}

}  // namespace kepmpc::mpc
