#include "kepmpc/pp/simplex.hpp"

#include <stdexcept>

namespace kepmpc::pp {

namespace {

// Accumulates inner products of varying length for one batched reduction.
struct DotBatch {
  Shares x;
  Shares y;
  std::vector<std::size_t> offsets{0};

  void term(const FieldElement& a, const FieldElement& b) {
    x.push_back(a);
    y.push_back(b);
  }
  std::size_t close() {
    offsets.push_back(x.size());
    return offsets.size() - 2;
  }
  Shares run(Peer& peer) const { return mpc::dots(peer, x, y, offsets); }
};

struct Candidate {
  FieldElement b;
  FieldElement c;
  FieldElement valid;
  Shares ind;
};

struct Basis {
  ShareMatrix b;  // b(i, j) = 1 iff variable j is basic in constraint row i+1
};

// One pivot; also advances the basis when given.
ShareMatrix pivot_impl(Peer& peer, const ShareMatrix& t, const Shares& row_ind, const Shares& col_ind,
                       const Shares& column, const FieldElement& prev, const FieldElement& prev_inv, Basis* basis,
                       FieldElement* piv_out) {
  const std::size_t m = t.rows - 1;
  const std::size_t cols = t.cols;
  const std::size_t n = cols - 1;

  // Pivot row, pivot element and the basis row leaving.
  DotBatch a;
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < m; ++i) a.term(row_ind[i], t.at(i + 1, j));
    a.close();
  }
  for (std::size_t i = 0; i < m; ++i) a.term(row_ind[i], column[i + 1]);
  a.close();
  if (basis) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) a.term(row_ind[i], basis->b.at(i, j));
      a.close();
    }
  }
  const Shares ra = a.run(peer);
  const Shares row(ra.begin(), ra.begin() + static_cast<std::ptrdiff_t>(cols));
  const FieldElement piv = ra[cols];
  if (piv_out) *piv_out = piv;

  if (peer.config().test_mode) {
    DotBatch num;
    for (std::size_t i = 0; i <= m; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        num.term(piv, t.at(i, j));
        num.term(-column[i], row[j]);
        num.close();
      }
    }
    Shares u = num.run(peer);
    u.push_back(prev);
    const auto plain = mpc::open(peer, u, OpenLabel::kTestOnly);
    const BigInt p = plain.back().to_signed();
    for (std::size_t k = 0; k + 1 < plain.size(); ++k) {
      if (plain[k].to_signed() % p != 0) throw std::logic_error("integer pivot left a remainder");
    }
  }

  // a = piv / prev and g_i = [i is the pivot row] - col_i / prev, so that
  // T' = a T + g (x) row keeps the pivot row and eliminates the others.
  Shares lhs{piv};
  Shares rhs{prev_inv};
  for (std::size_t i = 0; i <= m; ++i) {
    lhs.push_back(column[i]);
    rhs.push_back(prev_inv);
  }
  const Shares scaled = mpc::mul(peer, lhs, rhs);
  const FieldElement& scale = scaled[0];
  Shares g(m + 1);
  g[0] = -scaled[1];
  for (std::size_t i = 1; i <= m; ++i) g[i] = row_ind[i - 1] - scaled[i + 1];

  DotBatch c;
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      c.term(scale, t.at(i, j));
      c.term(g[i], row[j]);
      c.close();
    }
  }
  if (basis) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        c.term(row_ind[i], col_ind[j] - ra[cols + 1 + j]);
        c.close();
      }
    }
  }
  const Shares rc = c.run(peer);
  ShareMatrix out;
  out.rows = t.rows;
  out.cols = cols;
  out.data.assign(rc.begin(), rc.begin() + static_cast<std::ptrdiff_t>(t.data.size()));
  if (basis) {
    for (std::size_t k = 0; k < m * n; ++k) basis->b.data[k] += rc[t.data.size() + k];
  }
  return out;
}

}  // namespace

Shares select_pivot_column(Peer& peer, const ShareMatrix& t, unsigned entry_bits) {
  const Shares obj(t.data.begin(), t.data.begin() + static_cast<std::ptrdiff_t>(t.cols - 1));
  return mpc::sel_min(peer, obj, entry_bits);
}

PivotRow select_pivot_row(Peer& peer, const ShareMatrix& t, const Shares& column, unsigned entry_bits) {
  const std::size_t m = t.rows - 1;
  const Shares col(column.begin() + 1, column.end());
  const Shares elig = mpc::positive(peer, col, entry_bits);

  std::vector<Candidate> cand;
  cand.reserve(m);
  for (std::size_t i = 0; i < m; ++i) cand.push_back({t.at(i + 1, t.cols - 1), col[i], elig[i], {peer.constant(1)}});

  while (cand.size() > 1) {
    const std::size_t pairs = cand.size() / 2;
    // Cross products b_A c_B - b_B c_A and both-valid flags.
    DotBatch cross;
    for (std::size_t k = 0; k < pairs; ++k) {
      const Candidate& x = cand[2 * k];
      const Candidate& y = cand[2 * k + 1];
      cross.term(x.b, y.c);
      cross.term(-y.b, x.c);
      cross.close();
    }
    for (std::size_t k = 0; k < pairs; ++k) {
      cross.term(cand[2 * k].valid, cand[2 * k + 1].valid);
      cross.close();
    }
    const Shares cr = cross.run(peer);
    const Shares diff(cr.begin(), cr.begin() + static_cast<std::ptrdiff_t>(pairs));
    const Shares both(cr.begin() + static_cast<std::ptrdiff_t>(pairs), cr.end());
    // lt = 1 iff A's ratio exceeds B's.
    const Shares lt = mpc::positive(peer, diff, 2 * entry_bits + 1);
    const Shares both_lt = mpc::mul(peer, both, lt);

    // w = 1 picks B: B alone is valid, or both are and B's ratio is smaller.
    Shares w(pairs);
    for (std::size_t k = 0; k < pairs; ++k) w[k] = cand[2 * k + 1].valid - both[k] + both_lt[k];

    Shares lhs;
    Shares rhs;
    for (std::size_t k = 0; k < pairs; ++k) {
      const Candidate& x = cand[2 * k];
      const Candidate& y = cand[2 * k + 1];
      lhs.push_back(w[k]);
      rhs.push_back(y.b - x.b);
      lhs.push_back(w[k]);
      rhs.push_back(y.c - x.c);
      for (const auto& v : x.ind) {
        lhs.push_back(w[k]);
        rhs.push_back(v);
      }
      for (const auto& v : y.ind) {
        lhs.push_back(w[k]);
        rhs.push_back(v);
      }
    }
    const Shares prod = mpc::mul(peer, lhs, rhs);

    std::vector<Candidate> next;
    next.reserve(pairs + 1);
    std::size_t at = 0;
    for (std::size_t k = 0; k < pairs; ++k) {
      const Candidate& x = cand[2 * k];
      const Candidate& y = cand[2 * k + 1];
      Candidate z;
      z.b = x.b + prod[at++];
      z.c = x.c + prod[at++];
      z.valid = x.valid + y.valid - both[k];
      for (const auto& v : x.ind) z.ind.push_back(v - prod[at++]);
      for (std::size_t q = 0; q < y.ind.size(); ++q) z.ind.push_back(prod[at++]);
      next.push_back(std::move(z));
    }
    if (cand.size() % 2 == 1) next.push_back(std::move(cand.back()));
    cand = std::move(next);
  }
  return {cand[0].ind, peer.constant(1) - cand[0].valid};
}

ShareMatrix pivot_update(Peer& peer, const ShareMatrix& t, const Shares& row_ind, const Shares& column,
                         const FieldElement& prev, const FieldElement& prev_inv) {
  return pivot_impl(peer, t, row_ind, {}, column, prev, prev_inv, nullptr, nullptr);
}

ShareMatrix constant_matrix(Peer& peer, const PlainTableau& t) {
  ShareMatrix out(t.rows, t.cols, peer.field().zero());
  for (std::size_t k = 0; k < t.cells.size(); ++k) out.data[k] = peer.field().from_big(t.cells[k]);
  return out;
}

SimplexResult pp_simplex(Peer& peer, const ShareMatrix& input, const SimplexParams& params) {
  const std::size_t m = input.rows - 1;
  const std::size_t n = input.cols - 1;
  if (m == 0 || n < m) throw std::invalid_argument("tableau needs at least as many variables as constraints");
  const std::size_t cap = params.iteration_cap ? params.iteration_cap : std::max<std::size_t>(1, m * (n - m));
  const unsigned eb = params.entry_bits;

  ShareMatrix t = input;
  Basis basis{ShareMatrix(m, n, peer.field().zero())};
  for (std::size_t i = 0; i < m; ++i) basis.b.at(i, n - m + i) = peer.constant(1);
  FieldElement prev = peer.constant(1);
  FieldElement prev_inv = prev;
  FieldElement unbounded = peer.field().zero();

  SimplexResult res;
  while (true) {
    const Shares col_ind = select_pivot_column(peer, t, eb);
    // 1 when optimal, 0 when another pivot follows; +2 when the previous
    // ratio test found no bounded row.
    const FieldElement status = peer.constant(1) - mpc::sum(col_ind) + unbounded.times(2);
    const std::int64_t s = mpc::open(peer, {status}, OpenLabel::kSimplexTermination)[0].to_int64();
    if (s >= 2) throw UnboundedError("LP is unbounded");
    if (s == 1) break;
    if (s != 0) throw ConsistencyError("simplex status is not a bit");
    if (res.iterations == cap) throw IterationCapError("simplex exceeded " + std::to_string(cap) + " iterations");

    DotBatch colb;
    for (std::size_t i = 0; i <= m; ++i) {
      for (std::size_t j = 0; j < n; ++j) colb.term(t.at(i, j), col_ind[j]);
      colb.close();
    }
    const Shares column = colb.run(peer);
    const PivotRow pr = select_pivot_row(peer, t, column, eb);
    unbounded = pr.unbounded;

    FieldElement piv;
    t = pivot_impl(peer, t, pr.indicator, col_ind, column, prev, prev_inv, &basis, &piv);
    // An unbounded step may have picked a zero pivot; substitute 1 so the
    // inverse exists. The next status opening reports the failure.
    const FieldElement safe = piv + mpc::mul(peer, {unbounded}, {peer.constant(1) - piv})[0];
    prev = piv;
    prev_inv = mpc::inverse(peer, {safe})[0];
    ++res.iterations;
    if (params.on_pivot) params.on_pivot(peer, t, prev);
  }

  DotBatch xb;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) xb.term(basis.b.at(i, j), t.at(i + 1, n));
    xb.close();
  }
  res.x = xb.run(peer);
  res.z = -t.at(0, n);
  res.d = prev;
  res.d_inv = prev_inv;
  return res;
}

}  // namespace kepmpc::pp
