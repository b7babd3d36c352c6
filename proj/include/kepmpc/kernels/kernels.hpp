// Batched local arithmetic executed by each peer between communication
// rounds. Every kernel has a serial reference version and an OpenMP version;
// both must produce identical output.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "kepmpc/field/prime_field.hpp"

namespace kepmpc::kernels {

enum class Mode { kSerial, kParallel };

namespace serial {

// out[j * n + k] = h[k] + sum_{d<t} coeffs[k * t + d] * (j+1)^(d+1), i.e. the
// resharing polynomial of h[k] evaluated at every party.
void reshare_evaluate(std::span<const FieldElement> h, std::span<const FieldElement> coeffs, int t, int parties,
                      std::span<FieldElement> out);

// out[k] = sum_j lambda[j] * incoming[j * n + k] with small integer weights.
void recombine(std::span<const FieldElement> incoming, std::span<const std::int64_t> lambda, int parties,
               std::span<FieldElement> out);

void products(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<FieldElement> out);

// out[k] = sum_{i in [offsets[k], offsets[k+1])} x[i] * y[i]; empty ranges leave out[k] untouched,
// so callers pre-fill `out` with zeros.
void dots(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<const std::size_t> offsets,
          std::span<FieldElement> out);

}  // namespace serial

namespace parallel {

void reshare_evaluate(std::span<const FieldElement> h, std::span<const FieldElement> coeffs, int t, int parties,
                      std::span<FieldElement> out);
void recombine(std::span<const FieldElement> incoming, std::span<const std::int64_t> lambda, int parties,
               std::span<FieldElement> out);
void products(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<FieldElement> out);
void dots(std::span<const FieldElement> x, std::span<const FieldElement> y, std::span<const std::size_t> offsets,
          std::span<FieldElement> out);

// Number of OpenMP threads the parallel kernels use (1 when built without OpenMP).
int max_threads();

}  // namespace parallel

inline void reshare_evaluate(Mode m, std::span<const FieldElement> h, std::span<const FieldElement> coeffs, int t,
                             int parties, std::span<FieldElement> out) {
  if (m == Mode::kParallel) {
    parallel::reshare_evaluate(h, coeffs, t, parties, out);
  } else {
    serial::reshare_evaluate(h, coeffs, t, parties, out);
  }
}

inline void recombine(Mode m, std::span<const FieldElement> incoming, std::span<const std::int64_t> lambda,
                      int parties, std::span<FieldElement> out) {
  if (m == Mode::kParallel) {
    parallel::recombine(incoming, lambda, parties, out);
  } else {
    serial::recombine(incoming, lambda, parties, out);
  }
}

inline void products(Mode m, std::span<const FieldElement> x, std::span<const FieldElement> y,
                     std::span<FieldElement> out) {
  if (m == Mode::kParallel) {
    parallel::products(x, y, out);
  } else {
    serial::products(x, y, out);
  }
}

inline void dots(Mode m, std::span<const FieldElement> x, std::span<const FieldElement> y,
                 std::span<const std::size_t> offsets, std::span<FieldElement> out) {
  if (m == Mode::kParallel) {
    parallel::dots(x, y, offsets, out);
  } else {
    serial::dots(x, y, offsets, out);
  }
}

}  // namespace kepmpc::kernels
