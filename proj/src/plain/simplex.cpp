#include "kepmpc/plain/simplex.hpp"

#include <stdexcept>

namespace kepmpc {

std::optional<std::size_t> bland_column(const PlainTableau& t) {
  for (std::size_t j = 0; j < t.variables(); ++j) {
    if (t.at(0, j) > 0) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> ratio_row(const PlainTableau& t, std::size_t col) {
  std::optional<std::size_t> best;
  const std::size_t bc = t.bound_col();
  for (std::size_t i = 1; i < t.rows; ++i) {
    if (t.at(i, col) <= 0) continue;
    // b_i / a_i < b_r / a_r  <=>  b_i a_r < b_r a_i  (both a positive)
    if (!best || t.at(i, bc) * t.at(*best, col) < t.at(*best, bc) * t.at(i, col)) best = i;
  }
  return best;
}

void pivot(PlainTableau& t, std::size_t row, std::size_t col, const BigInt& prev) {
  const BigInt piv = t.at(row, col);
  for (std::size_t i = 0; i < t.rows; ++i) {
    if (i == row) continue;
    const BigInt f = t.at(i, col);
    for (std::size_t j = 0; j < t.cols; ++j) {
      BigInt num = piv * t.at(i, j) - f * t.at(row, j);
      BigInt q;
      BigInt r;
      divide_qr(num, prev, q, r);
      if (r != 0) throw std::logic_error("integer pivot left a remainder");
      t.at(i, j) = std::move(q);
    }
  }
}

PlainLPResult exact_simplex(PlainTableau t, const SimplexOptions& opts) {
  const std::size_t m = t.constraints();
  const std::size_t n = t.variables();
  if (n < m) throw std::invalid_argument("tableau has fewer variables than constraints");
  const std::size_t cap = opts.iteration_cap ? opts.iteration_cap : std::max<std::size_t>(1, m * (n - m));

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n - m + i;

  PlainLPResult res;
  BigInt prev = 1;
  while (auto col = bland_column(t)) {
    if (res.iterations == cap) throw IterationCapError("simplex exceeded " + std::to_string(cap) + " iterations");
    const auto row = ratio_row(t, *col);
    if (!row) throw UnboundedError("LP is unbounded in column " + std::to_string(*col + 1));
    const BigInt piv = t.at(*row, *col);
    pivot(t, *row, *col, prev);
    prev = piv;
    basis[*row - 1] = *col;
    ++res.iterations;
    if (opts.on_pivot) opts.on_pivot(t, prev);
  }

  res.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i) res.x[basis[i]] = t.at(i + 1, t.bound_col());
  res.z = -t.at(0, t.bound_col());
  res.d = prev;
  return res;
}

}  // namespace kepmpc
