// Exact integer tableaux in the layout used by every solver here:
// row 0 holds the objective coefficients with the corner cell -z, rows 1..m
// hold the constraints with the bound column last.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kepmpc/field/prime_field.hpp"

namespace kepmpc {

class UnboundedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IterationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlainTableau {
  std::size_t rows = 0;  // m + 1
  std::size_t cols = 0;  // n + 1
  std::vector<BigInt> cells;

  PlainTableau() = default;
  PlainTableau(std::size_t r, std::size_t c) : rows(r), cols(c), cells(r * c) {}

  BigInt& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }

  std::size_t constraints() const { return rows - 1; }
  std::size_t variables() const { return cols - 1; }
  std::size_t bound_col() const { return cols - 1; }

  bool operator==(const PlainTableau&) const = default;
};

// max c^T x s.t. A x <= b, x >= 0, with slack columns appended after the
// structural ones. `a` is m x n row-major.
PlainTableau standard_tableau(const std::vector<std::int64_t>& c, const std::vector<std::vector<std::int64_t>>& a,
                              const std::vector<std::int64_t>& b);

// Largest absolute entry.
BigInt max_abs_entry(const PlainTableau& t);

// Bits needed for any minor of a tableau whose entries are bounded by
// max_abs (Hadamard: max_abs^k * k^(k/2), k = min(rows, cols)). Integer
// pivoting keeps every entry a minor of the input, so this bounds all
// entries a solve can produce.
unsigned hadamard_bits(std::size_t rows, std::size_t cols, const BigInt& max_abs);

std::string to_string(const PlainTableau& t);

}  // namespace kepmpc
