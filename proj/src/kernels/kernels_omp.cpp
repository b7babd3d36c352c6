#include "kepmpc/kernels/kernels.hpp"

#ifdef KEPMPC_USE_OPENMP
#include <omp.h>
#endif

namespace kepmpc::kernels::parallel {

namespace {
// Below this many elements the fork/join cost dominates.
constexpr std::ptrdiff_t kMinParallel = 512;
}  // namespace

int max_threads() {
#ifdef KEPMPC_USE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void reshare_evaluate(std::span<const FieldElement> h, std::span<const FieldElement> coeffs, int t, int parties,
                      std::span<FieldElement> out) {
  const auto n = static_cast<std::ptrdiff_t>(h.size());
  if (t == 1) {
#pragma omp parallel for schedule(static) if (n * parties >= kMinParallel)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      FieldElement acc = h[k];
      for (int j = 0; j < parties; ++j) {
        acc += coeffs[k];
        out[j * n + k] = acc;
      }
    }
    return;
  }
#pragma omp parallel for schedule(static) if (n * parties >= kMinParallel)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    for (int j = 0; j < parties; ++j) {
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
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  if (parties == 3 && lambda[0] == 3 && lambda[1] == -3 && lambda[2] == 1) {
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const FieldElement d = incoming[k] - incoming[n + k];
      out[k] = d + d + d + incoming[2 * n + k];
    }
    return;
  }
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    FieldElement acc = incoming[k].times(lambda[0]);
    for (int j = 1; j < parties; ++j) acc += incoming[j * n + k].times(lambda[j]);
    out[k] = acc;
  }
}

void products(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<FieldElement> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void dots(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<const std::size_t> offsets,
          std::span<FieldElement> out) {
  const auto n = static_cast<std::ptrdiff_t>(out.size());
  const auto terms = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(dynamic, 16) if (terms >= kMinParallel)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::size_t lo = offsets[k];
    const std::size_t hi = offsets[k + 1];
    if (lo == hi) continue;
    FieldElement acc = x[lo] * y[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) acc += x[i] * y[i];
    out[k] = acc;
  }
}

}  // namespace kepmpc::kernels::parallel
