#include "kepmpc/kep/enumeration.hpp"

#include <algorithm>
#include <stdexcept>

namespace kepmpc {

std::size_t SubsetEnumeration::max_orientations() const {
  std::size_t m = 0;
  for (const auto& c : cycles) m = std::max(m, c.size());
  return m;
}

std::size_t SubsetEnumeration::total_cycles() const {
  std::size_t m = 0;
  for (const auto& c : cycles) m += c.size();
  return m;
}

SubsetEnumeration enumerate_subsets(int pairs, int max_cycle) {
  if (pairs < 2 || max_cycle < 2) throw std::invalid_argument("need at least 2 pairs and cycle size 2");
  SubsetEnumeration e;
  e.pairs = pairs;
  e.max_cycle = max_cycle;
  for (int k = 2; k <= std::min(max_cycle, pairs); ++k) {
    // Lexicographic k-combinations of 0..pairs-1.
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    while (true) {
      e.subsets.push_back(s);
      std::vector<std::vector<int>> orient;
      std::vector<int> rest(s.begin() + 1, s.end());
      do {
        std::vector<int> c{s[0]};
        c.insert(c.end(), rest.begin(), rest.end());
        orient.push_back(std::move(c));
      } while (std::next_permutation(rest.begin(), rest.end()));
      e.cycles.push_back(std::move(orient));

      int i = k - 1;
      while (i >= 0 && s[i] == pairs - k + i) --i;
      if (i < 0) break;
      ++s[i];
      for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
  }
  return e;
}

std::vector<int> plain_cycle_choice(const Digraph& g, const SubsetEnumeration& e) {
  std::vector<int> choice(e.size(), -1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.cycles[i].size(); ++j) {
      const auto& c = e.cycles[i][j];
      bool ok = true;
      for (std::size_t k = 0; k < c.size(); ++k) ok = ok && g.has(c[k], c[(k + 1) % c.size()]);
      if (ok) {
        choice[i] = static_cast<int>(j);
        break;
      }
    }
  }
  return choice;
}

PlainTableau plain_setup(const Digraph& g, const SubsetEnumeration& e) {
  if (g.n != e.pairs) throw std::invalid_argument("graph size differs from enumeration");
  const auto choice = plain_cycle_choice(g, e);
  const std::size_t s = e.size();
  PlainTableau t(e.pairs + 1, tableau_cols(e));
  for (std::size_t i = 0; i < s; ++i) {
    if (choice[i] >= 0) t.at(0, i) = static_cast<int>(e.subsets[i].size());
    for (int v : e.subsets[i]) t.at(v + 1, i) = 1;
  }
  for (int v = 0; v < e.pairs; ++v) {
    t.at(v + 1, s + v) = 1;
    t.at(v + 1, t.bound_col()) = 1;
  }
  return t;
}

unsigned kep_entry_bits(int pairs, int max_cycle) {
  // Constraint rows of any minor have 0/1 entries; the objective row is
  // bounded by max(l, pairs) (the corner collects at most `pairs` forced
  // transplants). Hadamard over k = pairs + 1 rows.
  const unsigned k = static_cast<unsigned>(pairs) + 1;
  BigInt bound = BigInt(std::max(max_cycle, pairs)) * pow(BigInt(k), (k + 1) / 2);
  return static_cast<unsigned>(msb(bound)) + 1;
}

void plain_derive(const std::vector<std::int64_t>& x_star, const std::vector<int>& choice, const SubsetEnumeration& e,
                  std::vector<std::int64_t>& donor, std::vector<std::int64_t>& recipient) {
  donor.assign(e.pairs, 0);
  recipient.assign(e.pairs, 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (x_star[i] == 0 || choice[i] < 0) continue;
    const auto& c = e.cycles[i][choice[i]];
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int v = c[k];
      const int w = c[(k + 1) % c.size()];
      recipient[v] = w + 1;
      donor[w] = v + 1;
    }
  }
}

PlainKepResult plain_solve_kep(const Digraph& g, int max_cycle, BranchPolicy policy) {
  const auto e = enumerate_subsets(g.n, max_cycle);
  PlainKepResult r;
  r.bb = plain_branch_and_bound(plain_setup(g, e), e.size(), g.n, policy);
  plain_derive(r.bb.x_star, plain_cycle_choice(g, e), e, r.donor, r.recipient);
  r.transplants = transplant_count(r.recipient);
  return r;
}

}  // namespace kepmpc
