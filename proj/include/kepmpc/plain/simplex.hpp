// Fraction-free (integer pivoting) primal Simplex on exact integers.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "kepmpc/plain/tableau.hpp"

namespace kepmpc {

struct PlainLPResult {
  // Structural and slack values scaled by d.
  std::vector<BigInt> x;
  BigInt z;
  BigInt d = 1;
  std::size_t iterations = 0;
};

// First column j < n with a positive objective entry (Bland).
std::optional<std::size_t> bland_column(const PlainTableau& t);
// Row minimizing b_i / T(i, col) over T(i, col) > 0, ties to the smallest row.
// nullopt when no entry is positive.
std::optional<std::size_t> ratio_row(const PlainTableau& t, std::size_t col);
// T'(i,j) = (T(r,c) T(i,j) - T(i,c) T(r,j)) / prev for i != r; row r is kept.
// Throws std::logic_error if a division is not exact.
void pivot(PlainTableau& t, std::size_t row, std::size_t col, const BigInt& prev);

struct SimplexOptions {
  // 0 means m * (n - m).
  std::size_t iteration_cap = 0;
  // Called after every pivot with the tableau and the current denominator.
  std::function<void(const PlainTableau&, const BigInt&)> on_pivot;
};

// Starts from the slack basis, which must be feasible (b >= 0).
PlainLPResult exact_simplex(PlainTableau t, const SimplexOptions& opts = {});

}  // namespace kepmpc
