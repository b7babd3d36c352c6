// Simplex over a secret-shared tableau with integer pivoting. Pivot
// positions stay secret; the only opened values are one status per
// iteration plus the final one.

#pragma once

#include <cstddef>
#include <functional>

#include "kepmpc/mpc/primitives.hpp"
#include "kepmpc/plain/tableau.hpp"

namespace kepmpc::pp {

using mpc::ShareMatrix;

struct SimplexParams {
  // Public bound |entry| < 2^entry_bits on every entry any pivot can produce.
  unsigned entry_bits = 32;
  // 0 means m * (n - m).
  std::size_t iteration_cap = 0;
  // Test hook, called on every peer after each pivot with the new tableau
  // and denominator shares.
  std::function<void(Peer&, const ShareMatrix&, const FieldElement&)> on_pivot;
};

struct SimplexResult {
  Shares x;  // d-scaled values of all n variables
  FieldElement z;
  FieldElement d;
  FieldElement d_inv;
  std::size_t iterations = 0;
};

// Unit indicator of the first column with a positive objective entry; zero
// if the tableau is optimal.
Shares select_pivot_column(Peer& peer, const ShareMatrix& t, unsigned entry_bits);

struct PivotRow {
  Shares indicator;  // over constraint rows 1..m
  FieldElement unbounded;  // 1 iff no entry of the column is positive
};

// Ratio test by cross-multiplication over rows with a positive entry in
// `column` (the extracted pivot column, rows 0..m); ties go to the smallest row.
PivotRow select_pivot_row(Peer& peer, const ShareMatrix& t, const Shares& column, unsigned entry_bits);

// T'(i,j) = (piv T(i,j) - col_i row_j) / prev for rows off the pivot row,
// which is kept. `column` covers rows 0..m, `row_ind` rows 1..m. Division
// is multiplication by prev_inv; test mode opens the numerators and checks
// that the integer division is exact.
ShareMatrix pivot_update(Peer& peer, const ShareMatrix& t, const Shares& row_ind, const Shares& column,
                         const FieldElement& prev, const FieldElement& prev_inv);

// The slack basis of the last m variable columns must be feasible.
SimplexResult pp_simplex(Peer& peer, const ShareMatrix& t, const SimplexParams& params);

// Shares a public plaintext tableau with every peer.
ShareMatrix constant_matrix(Peer& peer, const PlainTableau& t);

}  // namespace kepmpc::pp
