#include "kepmpc/plain/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kepmpc {

PlainTableau standard_tableau(const std::vector<std::int64_t>& c, const std::vector<std::vector<std::int64_t>>& a,
                              const std::vector<std::int64_t>& b) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw std::invalid_argument("bound vector length differs from constraint count");
  PlainTableau t(m + 1, n + m + 1);
  for (std::size_t j = 0; j < n; ++j) t.at(0, j) = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("constraint row has the wrong length");
    if (b[i] < 0) throw std::invalid_argument("slack basis is infeasible for a negative bound");
    for (std::size_t j = 0; j < n; ++j) t.at(i + 1, j) = a[i][j];
    t.at(i + 1, n + i) = 1;
    t.at(i + 1, n + m) = b[i];
  }
  return t;
}

BigInt max_abs_entry(const PlainTableau& t) {
  BigInt m = 0;
  for (const auto& v : t.cells) m = std::max(m, BigInt(abs(v)));
  return m;
}

unsigned hadamard_bits(std::size_t rows, std::size_t cols, const BigInt& max_abs) {
  const std::size_t k = std::min(rows, cols);
  const BigInt a = std::max(max_abs, BigInt(1));
  // a^k * k^(k/2), rounded up via k^ceil(k/2).
  BigInt bound = pow(a, static_cast<unsigned>(k)) * pow(BigInt(k), static_cast<unsigned>((k + 1) / 2));
  return static_cast<unsigned>(msb(bound)) + 1;
}

std::string to_string(const PlainTableau& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (std::size_t j = 0; j < t.cols; ++j) {
      if (j == t.bound_col()) os << " |";
      os << ' ' << t.at(i, j);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace kepmpc
