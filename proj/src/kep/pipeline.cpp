#include "kepmpc/kep/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace kepmpc::kep {

namespace {

unsigned width_of(std::uint64_t v) { return std::max(1u, static_cast<unsigned>(std::bit_width(v))); }

// Rows and columns of `m` permuted by sigma on every peer: out(i, j) =
// m(sigma(i), sigma(j)).
ShareMatrix permute(const Shares& data, std::size_t n, const std::vector<std::size_t>& sigma) {
  ShareMatrix out;
  out.rows = n;
  out.cols = n;
  out.data.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.data[i * n + j] = data[sigma[i] * n + sigma[j]];
  }
  return out;
}

// Members of group g convert to additive shares, permute them with the
// group's permutation and reshare; everybody sums what the members sent.
ShareMatrix group_step(Peer& peer, const ShareMatrix& m, unsigned mask, const std::vector<std::size_t>& sigma) {
  const PrimeField& f = peer.field();
  const int kappa = peer.parties();
  const int t = peer.threshold();
  const PartyId me = peer.id();
  const std::size_t n = m.data.size();
  const bool member = (mask >> (me - 1)) & 1u;

  std::vector<PartyId> members;
  for (PartyId p = 1; p <= kappa; ++p) {
    if ((mask >> (p - 1)) & 1u) members.push_back(p);
  }

  std::vector<Payload> out(kappa);
  Shares evals;
  if (member) {
    const auto lambda = lagrange_at_zero(f, members);
    const FieldElement& mine = lambda[std::find(members.begin(), members.end(), me) - members.begin()];
    Shares additive(n);
    for (std::size_t k = 0; k < n; ++k) additive[k] = mine * m.data[k];
    const ShareMatrix permuted = permute(additive, m.rows, sigma);
    Shares coeffs(n * t);
    for (auto& c : coeffs) c = f.random(peer.local_rng());
    evals.resize(kappa * n);
    kernels::reshare_evaluate(peer.kernel_mode(), permuted.data, coeffs, t, kappa, evals);
    for (int j = 0; j < kappa; ++j) {
      if (j == me - 1) continue;
      out[j].assign(evals.begin() + static_cast<std::ptrdiff_t>(j * n),
                    evals.begin() + static_cast<std::ptrdiff_t>((j + 1) * n));
    }
  }
  const auto in = peer.round(std::move(out));

  ShareMatrix res(m.rows, m.cols, f.zero());
  for (PartyId p : members) {
    if (p == me) {
      for (std::size_t k = 0; k < n; ++k) res.data[k] += evals[(me - 1) * n + k];
      continue;
    }
    const Payload& got = in[p - 1];
    if (got.size() != n) throw ConsistencyError("shuffle resharing batch has the wrong size");
    for (std::size_t k = 0; k < n; ++k) res.data[k] += got[k];
  }
  return res;
}

void check_square(const ShareMatrix& m, const ShuffleKey& key) {
  if (m.rows != m.cols || m.rows != key.size) throw std::invalid_argument("shuffle needs a square matrix of key size");
}

}  // namespace

std::vector<SharedQuote> unflatten(const Shares& flat, std::size_t pairs, std::size_t hla_length) {
  const std::size_t per = 2 * (kBloodtypes + hla_length);
  if (flat.size() != pairs * per) throw std::invalid_argument("flattened quotes have the wrong length");
  std::vector<SharedQuote> out(pairs);
  auto it = flat.begin();
  auto take = [&](std::size_t len) {
    Shares s(it, it + static_cast<std::ptrdiff_t>(len));
    it += static_cast<std::ptrdiff_t>(len);
    return s;
  };
  for (auto& q : out) {
    q.donor_bloodtype = take(kBloodtypes);
    q.donor_antigens = take(hla_length);
    q.patient_accepts = take(kBloodtypes);
    q.patient_antibodies = take(hla_length);
  }
  return out;
}

Shares comp_check(Peer& peer, const std::vector<const SharedQuote*>& donors,
                  const std::vector<const SharedQuote*>& patients) {
  const std::size_t n = donors.size();
  if (patients.size() != n) throw std::invalid_argument("donor and patient lists differ in length");
  if (n == 0) return {};
  const std::size_t hla = donors[0]->donor_antigens.size();

  // Bloodtype overlaps, then antigen hits, as one batch of inner products.
  Shares xs;
  Shares ys;
  std::vector<std::size_t> offsets{0};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t b = 0; b < kBloodtypes; ++b) {
      xs.push_back(donors[k]->donor_bloodtype[b]);
      ys.push_back(patients[k]->patient_accepts[b]);
    }
    offsets.push_back(xs.size());
  }
  if (hla > 0) {
    for (std::size_t k = 0; k < n; ++k) {
      if (donors[k]->donor_antigens.size() != hla || patients[k]->patient_antibodies.size() != hla) {
        throw std::invalid_argument("quotes use different HLA lengths");
      }
      for (std::size_t a = 0; a < hla; ++a) {
        xs.push_back(donors[k]->donor_antigens[a]);
        ys.push_back(patients[k]->patient_antibodies[a]);
      }
      offsets.push_back(xs.size());
    }
  }
  const Shares sums = mpc::dots(peer, xs, ys, offsets);
  const Shares pos = mpc::positive(peer, sums, width_of(std::max<std::size_t>(kBloodtypes, hla)) + 1);
  if (hla == 0) return Shares(pos.begin(), pos.end());

  const Shares abo(pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(n));
  Shares clear(n);
  for (std::size_t k = 0; k < n; ++k) clear[k] = peer.constant(1) - pos[n + k];
  return mpc::mul(peer, abo, clear);
}

FieldElement comp_check(Peer& peer, const SharedQuote& donor, const SharedQuote& patient) {
  return comp_check(peer, std::vector<const SharedQuote*>{&donor}, std::vector<const SharedQuote*>{&patient})[0];
}

ShareMatrix build_adjacency(Peer& peer, const std::vector<SharedQuote>& quotes) {
  const std::size_t n = quotes.size();
  std::vector<const SharedQuote*> donors;
  std::vector<const SharedQuote*> patients;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      donors.push_back(&quotes[i]);
      patients.push_back(&quotes[j]);
    }
  }
  const Shares bits = comp_check(peer, donors, patients);
  ShareMatrix m(n, n, peer.field().zero());
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.at(i, j) = bits[k++];
    }
  }
  return m;
}

ShuffleKey draw_shuffle(Peer& peer, std::size_t size) {
  ShuffleKey key;
  key.size = size;
  for (unsigned mask : peer.groups()) {
    std::vector<std::size_t> sigma;
    if ((mask >> (peer.id() - 1)) & 1u) {
      sigma.resize(size);
      std::iota(sigma.begin(), sigma.end(), std::size_t{0});
      std::shuffle(sigma.begin(), sigma.end(), peer.group_rng(mask));
    }
    key.by_group.push_back(std::move(sigma));
  }
  return key;
}

ShareMatrix shuffle(Peer& peer, const ShareMatrix& m, const ShuffleKey& key) {
  check_square(m, key);
  ShareMatrix cur = m;
  const auto& groups = peer.groups();
  for (std::size_t g = 0; g < groups.size(); ++g) cur = group_step(peer, cur, groups[g], key.by_group[g]);
  return cur;
}

ShareMatrix reverse_shuffle(Peer& peer, const ShareMatrix& m, const ShuffleKey& key) {
  check_square(m, key);
  ShareMatrix cur = m;
  const auto& groups = peer.groups();
  for (std::size_t g = groups.size(); g-- > 0;) {
    const auto& sigma = key.by_group[g];
    std::vector<std::size_t> inv(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = i;
    cur = group_step(peer, cur, groups[g], inv);
  }
  return cur;
}

std::vector<std::size_t> shuffle_permutation(const std::vector<ShuffleKey>& keys, const std::vector<unsigned>& groups) {
  if (keys.empty()) throw std::invalid_argument("no shuffle keys");
  const std::size_t n = keys[0].size;
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), std::size_t{0});
  // Step g maps M to M(sigma_g(i), sigma_g(j)), so pi = sigma_1 o sigma_2 o ...
  for (std::size_t g = groups.size(); g-- > 0;) {
    const int member = std::countr_zero(groups[g]);
    const auto& sigma = keys.at(static_cast<std::size_t>(member)).by_group.at(g);
    for (auto& v : pi) v = sigma[v];
  }
  return pi;
}

Setup ip_setup(Peer& peer, const ShareMatrix& adj, const SubsetEnumeration& e) {
  const std::size_t pairs = static_cast<std::size_t>(e.pairs);
  if (adj.rows != pairs || adj.cols != pairs) throw std::invalid_argument("adjacency size differs from enumeration");
  const std::size_t s = e.size();
  const FieldElement zero = peer.field().zero();

  // [sum of the cycle's edge indicators >= |S_i|] for every orientation.
  Shares shifted;
  std::vector<std::size_t> offsets{0};
  for (std::size_t i = 0; i < s; ++i) {
    const auto size = static_cast<std::int64_t>(e.subsets[i].size());
    for (const auto& c : e.cycles[i]) {
      FieldElement acc = peer.constant(1 - size);
      for (std::size_t k = 0; k < c.size(); ++k) acc += adj.at(c[k], c[(k + 1) % c.size()]);
      shifted.push_back(acc);
    }
    offsets.push_back(shifted.size());
  }
  const Shares exists = mpc::positive(peer, shifted, width_of(static_cast<std::uint64_t>(e.max_cycle)) + 1);
  const Shares chosen = mpc::first_set(peer, exists, offsets);

  Setup out;
  out.cycle_map = ShareMatrix(s, e.max_orientations(), zero);
  out.tableau = ShareMatrix(pairs + 1, tableau_cols(e), zero);
  const std::size_t bc = out.tableau.cols - 1;
  for (std::size_t i = 0; i < s; ++i) {
    FieldElement any = zero;
    for (std::size_t j = offsets[i]; j < offsets[i + 1]; ++j) {
      out.cycle_map.at(i, j - offsets[i]) = chosen[j];
      any += chosen[j];
    }
    out.tableau.at(0, i) = any.times(static_cast<std::int64_t>(e.subsets[i].size()));
    for (int v : e.subsets[i]) out.tableau.at(v + 1, i) = peer.constant(1);
  }
  for (std::size_t v = 0; v < pairs; ++v) {
    out.tableau.at(v + 1, s + v) = peer.constant(1);
    out.tableau.at(v + 1, bc) = peer.constant(1);
  }
  return out;
}

ShareMatrix resolve_cycles(Peer& peer, const Shares& x_star, const ShareMatrix& cycle_map,
                           const SubsetEnumeration& e) {
  const std::size_t s = e.size();
  if (x_star.size() != s || cycle_map.rows != s) throw std::invalid_argument("solution size differs from enumeration");
  Shares lhs;
  Shares rhs;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < e.cycles[i].size(); ++j) {
      lhs.push_back(x_star[i]);
      rhs.push_back(cycle_map.at(i, j));
    }
  }
  const Shares y = mpc::mul(peer, lhs, rhs);

  const std::size_t n = static_cast<std::size_t>(e.pairs);
  ShareMatrix a(n, n, peer.field().zero());
  std::size_t k = 0;
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& c : e.cycles[i]) {
      for (std::size_t q = 0; q < c.size(); ++q) a.at(c[q], c[(q + 1) % c.size()]) += y[k];
      ++k;
    }
  }
  return a;
}

DerivedOutput derive_output(const ShareMatrix& a) {
  const std::size_t n = a.rows;
  if (a.cols != n) throw std::invalid_argument("solution matrix must be square");
  if (n == 0) return {};
  const FieldElement zero = a.data[0] - a.data[0];
  DerivedOutput out{Shares(n, zero), Shares(n, zero)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.recipient[i] += a.at(i, j).times(static_cast<std::int64_t>(j + 1));
      out.donor[i] += a.at(j, i).times(static_cast<std::int64_t>(j + 1));
    }
  }
  return out;
}

unsigned required_value_bits(int pairs, int max_cycle) {
  const unsigned eb = kep_entry_bits(pairs, max_cycle);
  return std::max(2 * eb, eb + pp::cap_bits(pairs) + 2);
}

KepShares kep_ip(Peer& peer, const std::vector<SharedQuote>& quotes, const KepParams& params) {
  const int pairs = static_cast<int>(quotes.size());
  if (pairs < 2 || params.max_cycle < 2) throw std::invalid_argument("need at least 2 pairs and cycle size 2");
  const auto e = enumerate_subsets(pairs, params.max_cycle);
  const std::size_t n = quotes.size();

  const ShareMatrix adj = build_adjacency(peer, quotes);
  const ShuffleKey key = draw_shuffle(peer, n);
  if (params.on_shuffle) params.on_shuffle(peer, key);
  const ShareMatrix shuffled = shuffle(peer, adj, key);
  if (peer.config().test_mode && params.on_permutation) {
    // diag(1..n) shuffles to diag(pi(0)+1, ..).
    ShareMatrix index(n, n, peer.field().zero());
    for (std::size_t i = 0; i < n; ++i) index.at(i, i) = peer.constant(static_cast<std::int64_t>(i + 1));
    const ShareMatrix moved = shuffle(peer, index, key);
    Shares diag;
    for (std::size_t i = 0; i < n; ++i) diag.push_back(moved.at(i, i));
    std::vector<std::size_t> pi;
    for (const auto& v : mpc::open(peer, diag, OpenLabel::kTestOnly)) {
      pi.push_back(static_cast<std::size_t>(v.to_int64() - 1));
    }
    params.on_permutation(peer, pi);
  }

  const Setup setup = ip_setup(peer, shuffled, e);
  if (params.on_setup) params.on_setup(peer, shuffled, setup);

  pp::BBParams bb;
  bb.entry_bits = kep_entry_bits(pairs, params.max_cycle);
  bb.structural = e.size();
  bb.value_cap = pairs;
  bb.iteration_cap = params.iteration_cap;
  const pp::BBResult res = pp::pp_branch_and_bound(peer, setup.tableau, peer.constant(pairs), bb);

  const ShareMatrix a = reverse_shuffle(peer, resolve_cycles(peer, res.best.x, setup.cycle_map, e), key);
  KepShares out{derive_output(a), res.trace};
  mpc::release_output(peer, 2 * n);
  return out;
}

KepRun solve_kep(SessionConfig cfg, const std::vector<MedicalQuote>& quotes, const KepParams& params,
                 std::uint64_t dealer_seed) {
  if (quotes.empty()) throw std::invalid_argument("no pairs");
  const std::size_t hla = quotes.front().hla_length();
  std::vector<std::int64_t> flat;
  for (const auto& q : quotes) {
    q.validate();
    if (q.hla_length() != hla) throw QuoteFormatError("pairs use different HLA lengths");
    const auto v = q.flatten();
    flat.insert(flat.end(), v.begin(), v.end());
  }
  const int pairs = static_cast<int>(quotes.size());
  cfg.value_bits = std::max(cfg.value_bits, required_value_bits(pairs, params.max_cycle));

  Rng dealer(dealer_seed);
  const auto dealt = deal(cfg, flat, dealer);
  std::vector<TreeTrace> traces(cfg.peers);
  auto r = run_protocol(cfg, [&](Peer& p) {
    const auto mine = unflatten(dealt[p.id() - 1], quotes.size(), hla);
    KepShares s = kep_ip(p, mine, params);
    traces[p.id() - 1] = s.trace;
    Shares out = s.output.donor;
    out.insert(out.end(), s.output.recipient.begin(), s.output.recipient.end());
    return out;
  });
  for (const auto& t : traces) {
    if (!(t == traces[0])) throw ConsistencyError("peers disagree on the Branch-and-Bound trace");
  }

  const auto v = reveal_int(cfg, r.outputs);
  KepRun run;
  run.donor.assign(v.begin(), v.begin() + pairs);
  run.recipient.assign(v.begin() + pairs, v.end());
  run.trace = traces[0];
  run.transcript = std::move(r.transcript);
  run.traffic = std::move(r.traffic);
  run.simulated_seconds = r.simulated_seconds;
  run.wall_seconds = r.wall_seconds;
  return run;
}

nlohmann::json to_json(const KepRun& run) {
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t i = 0; i < run.donor.size(); ++i) {
    pairs.push_back({{"pair", i + 1}, {"donor", run.donor[i]}, {"recipient", run.recipient[i]}});
  }
  std::uint64_t bytes = 0;
  for (const auto& t : run.traffic) bytes = std::max(bytes, t.bytes_sent);
  return {{"pairs", pairs},
          {"transplants", run.transplants()},
          {"trace", to_json(run.trace)},
          {"nodes", run.trace.nodes.size()},
          {"total_iterations", run.trace.total_iterations()},
          {"simulated_seconds", run.simulated_seconds},
          {"wall_seconds", run.wall_seconds},
          {"bytes_sent_max", bytes}};
}

}  // namespace kepmpc::kep
