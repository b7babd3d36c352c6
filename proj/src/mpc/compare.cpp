#include <stdexcept>

#include "kepmpc/mpc/primitives.hpp"

namespace kepmpc::mpc {

namespace {

bool bit_of(const Limbs& v, unsigned i) { return (v[i / 64] >> (i % 64)) & 1u; }

std::vector<std::size_t> uniform_offsets(std::size_t segments, std::size_t len) {
  std::vector<std::size_t> off(segments + 1);
  for (std::size_t s = 0; s <= segments; ++s) off[s] = s * len;
  return off;
}

void check_offsets(const Shares& x, const std::vector<std::size_t>& offsets) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != x.size()) {
    throw std::invalid_argument("segment offsets do not cover input");
  }
}

}  // namespace

Shares less_than_zero(Peer& peer, const Shares& a, unsigned k) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  const SessionConfig& cfg = peer.config();
  if (k < 2) throw std::invalid_argument("comparison width must be at least 2 bits");
  if (k > cfg.value_bits + 2) {
    throw RangeError("comparison of " + std::to_string(k) + "-bit values exceeds the session's value_bits");
  }
  const PrimeField& f = peer.field();

  if (cfg.test_mode) {
    const auto plain = open(peer, a, OpenLabel::kTestOnly);
    const BigInt bound = BigInt(1) << (k - 1);
    for (const auto& v : plain) {
      const BigInt s = v.to_signed();
      if (s >= bound || s <= -bound) {
        throw RangeError("comparison input " + s.str() + " exceeds " + std::to_string(k - 1) + " bits");
      }
    }
  }

  const unsigned m = k - 1;
  const Shares r = random_bits(peer, n * m);
  const Shares r_high = peer.random_bounded(n, cfg.stat_security + 1);

  // b = a + 2^m lies in [0, 2^(m+1)); mask it as b + 2^m r'' + r'.
  const FieldElement two_m = f.from_big(BigInt(1) << m);
  Shares masked(n);
  Shares r_low(n, f.zero());
  for (std::size_t q = 0; q < n; ++q) {
    for (unsigned i = m; i-- > 0;) r_low[q] = r_low[q] + r_low[q] + r[q * m + i];
    masked[q] = a[q] + two_m + two_m * r_high[q] + r_low[q];
  }
  const auto c = reveal_masked(peer, masked);

  // BitLT(c mod 2^m, r): XOR bits, most significant first, then locate the
  // highest differing bit with a prefix OR.
  Shares e(n * m);
  std::vector<Limbs> c_plain(n);
  for (std::size_t q = 0; q < n; ++q) {
    c_plain[q] = c[q].canonical();
    for (unsigned j = 0; j < m; ++j) {
      const unsigned i = m - 1 - j;
      const FieldElement& ri = r[q * m + i];
      e[q * m + j] = bit_of(c_plain[q], i) ? f.one() - ri : ri;
    }
  }
  const auto seg = uniform_offsets(n, m);
  const Shares pre = prefix_or(peer, e, seg);
  Shares g(n * m);
  Shares r_msb(n * m);
  for (std::size_t q = 0; q < n; ++q) {
    for (unsigned j = 0; j < m; ++j) {
      const std::size_t at = q * m + j;
      g[at] = j == 0 ? pre[at] : pre[at] - pre[at - 1];
      r_msb[at] = r[q * m + (m - 1 - j)];
    }
  }
  const Shares u = dots(peer, g, r_msb, seg);

  // b mod 2^m = c' - r' + 2^m u, and [a >= 0] is bit m of b.
  const FieldElement inv_two_m = two_m.inverse();
  Shares out(n);
  for (std::size_t q = 0; q < n; ++q) {
    Limbs low = c_plain[q];
    for (unsigned w = 0; w < 4; ++w) {
      if (m <= w * 64) {
        low[w] = 0;
      } else if (m < (w + 1) * 64) {
        low[w] &= (std::uint64_t{1} << (m - w * 64)) - 1;
      }
    }
    const FieldElement b_mod = FieldElement(&f, f.to_mont(low)) - r_low[q] + two_m * u[q];
    const FieldElement b = a[q] + two_m;
    out[q] = f.one() - (b - b_mod) * inv_two_m;
  }
  return out;
}

Shares positive(Peer& peer, const Shares& x, unsigned bits) {
  Shares neg(x);
  for (auto& v : neg) v = -v;
  return less_than_zero(peer, neg, bits + 1);
}

Shares greater_than(Peer& peer, const Shares& x, const Shares& y, unsigned bits) {
  return less_than_zero(peer, sub(y, x), bits + 2);
}

Shares prefix_or(Peer& peer, const Shares& bits, const std::vector<std::size_t>& offsets) {
  check_offsets(bits, offsets);
  Shares p(bits);
  std::size_t longest = 0;
  for (std::size_t s = 0; s + 1 < offsets.size(); ++s) longest = std::max(longest, offsets[s + 1] - offsets[s]);
  // Sklansky: at level l every position in the upper half of a 2^(l+1)
  // block absorbs the last position of the lower half.
  for (std::size_t l = 0; (std::size_t{1} << l) < longest; ++l) {
    std::vector<std::size_t> dst;
    std::vector<std::size_t> src;
    for (std::size_t s = 0; s + 1 < offsets.size(); ++s) {
      const std::size_t base = offsets[s];
      const std::size_t len = offsets[s + 1] - base;
      for (std::size_t i = 0; i < len; ++i) {
        if (((i >> l) & 1u) == 0) continue;
        dst.push_back(base + i);
        src.push_back(base + ((i >> l) << l) - 1);
      }
    }
    Shares a(dst.size());
    Shares b(dst.size());
    for (std::size_t k = 0; k < dst.size(); ++k) {
      a[k] = p[dst[k]];
      b[k] = p[src[k]];
    }
    const Shares ab = mul(peer, a, b);
    for (std::size_t k = 0; k < dst.size(); ++k) p[dst[k]] = a[k] + b[k] - ab[k];
  }
  return p;
}

Shares prefix_or(Peer& peer, const Shares& bits) { return prefix_or(peer, bits, {0, bits.size()}); }

Shares first_set(Peer& peer, const Shares& bits, const std::vector<std::size_t>& offsets) {
  const Shares p = prefix_or(peer, bits, offsets);
  Shares out(p);
  for (std::size_t s = 0; s + 1 < offsets.size(); ++s) {
    for (std::size_t i = offsets[s] + 1; i < offsets[s + 1]; ++i) out[i] = p[i] - p[i - 1];
  }
  return out;
}

Shares first_set(Peer& peer, const Shares& bits) { return first_set(peer, bits, {0, bits.size()}); }

Shares sel_min(Peer& peer, const Shares& u, unsigned bits) { return first_set(peer, positive(peer, u, bits)); }

}  // namespace kepmpc::mpc
