#include "kepmpc/kernels/kernels.hpp"

namespace kepmpc::kernels::serial {

void reshare_evaluate(std::span<const FieldElement> h, std::span<const FieldElement> coeffs, int t, int parties,
                      std::span<FieldElement> out) {
  const std::size_t n = h.size();
  if (t == 1) {
    // Points 1, 2, ... are consecutive: step by the linear coefficient.
    for (std::size_t k = 0; k < n; ++k) {
      FieldElement acc = h[k];
      for (int j = 0; j < parties; ++j) {
        acc += coeffs[k];
        out[j * n + k] = acc;
      }
    }
    return;
  }
  for (int j = 0; j < parties; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      // Horner in x = j+1 over (coeffs[t-1], ..., coeffs[0], h).
      FieldElement acc = h[k];
      if (t > 0) {
        acc = coeffs[k * t + t - 1];
        for (int d = t - 2; d >= 0; --d) acc = acc.times(j + 1) + coeffs[k * t + d];
        acc = acc.times(j + 1) + h[k];
      }
      out[j * n + k] = acc;
    }
  }
}

void recombine(std::span<const FieldElement> incoming, std::span<const std::int64_t> lambda, int parties,
               std::span<FieldElement> out) {
  const std::size_t n = out.size();
  if (parties == 3 && lambda[0] == 3 && lambda[1] == -3 && lambda[2] == 1) {
    for (std::size_t k = 0; k < n; ++k) {
      const FieldElement d = incoming[k] - incoming[n + k];
      out[k] = d + d + d + incoming[2 * n + k];
    }
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    FieldElement acc = incoming[k].times(lambda[0]);
    for (int j = 1; j < parties; ++j) acc += incoming[j * n + k].times(lambda[j]);
    out[k] = acc;
  }
}

void products(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<FieldElement> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] * y[i];
}

void dots(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<const std::size_t> offsets,
          std::span<FieldElement> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::size_t lo = offsets[k];
    const std::size_t hi = offsets[k + 1];
    if (lo == hi) continue;
    FieldElement acc = x[lo] * y[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc += x[i] * y[i];
    out[k] = acc;
  }
}

}  // namespace kepmpc::kernels::serial
