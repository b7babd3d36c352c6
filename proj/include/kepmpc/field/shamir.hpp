// Shamir (t, kappa) threshold sharing over a PrimeField.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "kepmpc/field/prime_field.hpp"

namespace kepmpc {

// Parties are numbered 1..kappa; party i holds the evaluation at x = i.
using PartyId = int;

class RangeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientSharesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SharingParams {
  int threshold = 1;
  int parties = 3;
};

struct SecretShare {
  PartyId party = 0;
  FieldElement point;
};

// Shares a signed integer with |x| < 2^value_bits. Throws RangeError otherwise.
std::vector<SecretShare> share(const PrimeField& field, const BigInt& x, SharingParams params, Rng& rng,
                               unsigned value_bits);

// Shares an arbitrary field element (no range check).
std::vector<SecretShare> share_element(const FieldElement& x, SharingParams params, Rng& rng);

// Lagrange interpolation at zero from the first threshold+1 shares.
// Throws InsufficientSharesError on too few shares or duplicate parties.
FieldElement reconstruct(std::span<const SecretShare> shares, int threshold);

// Lagrange coefficients for evaluating at zero from the given x-coordinates.
std::vector<FieldElement> lagrange_at_zero(const PrimeField& field, std::span<const PartyId> xs);

// a*x + b*y on one party's shares; no interaction needed.
inline SecretShare local_linear(const FieldElement& a, const SecretShare& x, const FieldElement& b,
                                const SecretShare& y) {
  return {x.party, a * x.point + b * y.point};
}

}  // namespace kepmpc
