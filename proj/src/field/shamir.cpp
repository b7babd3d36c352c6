#include "kepmpc/field/shamir.hpp"

#include <algorithm>
#include <string>

namespace kepmpc {

std::vector<SecretShare> share_element(const FieldElement& x, SharingParams params, Rng& rng) {
  const PrimeField& f = *x.field();
  if (params.threshold < 0 || params.parties < params.threshold + 1) {
    throw std::invalid_argument("invalid sharing parameters");
  }
  std::vector<FieldElement> coeffs;
  coeffs.reserve(params.threshold);
  for (int d = 0; d < params.threshold; ++d) coeffs.push_back(f.random(rng));

  std::vector<SecretShare> out;
  out.reserve(params.parties);
  for (PartyId i = 1; i <= params.parties; ++i) {
    const FieldElement xi = f.from_int(i);
    // Horner from the top coefficient down to the secret.
    FieldElement acc = f.zero();
    for (int d = params.threshold - 1; d >= 0; --d) acc = (acc + coeffs[d]) * xi;
    out.push_back({i, acc + x});
  }
  return out;
}

std::vector<SecretShare> share(const PrimeField& field, const BigInt& x, SharingParams params, Rng& rng,
                               unsigned value_bits) {
  const BigInt bound = BigInt(1) << value_bits;
  if (x >= bound || x <= -bound) {
    throw RangeError("value " + x.str() + " exceeds " + std::to_string(value_bits) + "-bit signed range");
  }
  if (bound >= field.modulus() / 2) throw RangeError("value range does not fit the field");
  return share_element(field.from_big(x), params, rng);
}

std::vector<FieldElement> lagrange_at_zero(const PrimeField& field, std::span<const PartyId> xs) {
  std::vector<FieldElement> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    FieldElement num = field.one();
    FieldElement den = field.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      num *= field.from_int(xs[j]);
      den *= field.from_int(xs[j] - xs[i]);
    }
    out.push_back(num * den.inverse());
  }
  return out;
}

FieldElement reconstruct(std::span<const SecretShare> shares, int threshold) {
  const std::size_t need = static_cast<std::size_t>(threshold) + 1;
  if (shares.size() < need) {
    throw InsufficientSharesError("need " + std::to_string(need) + " shares, got " +
                                  std::to_string(shares.size()));
  }
  std::vector<PartyId> xs;
  for (std::size_t i = 0; i < need; ++i) xs.push_back(shares[i].party);
  std::vector<PartyId> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InsufficientSharesError("duplicate party in share set");
  }
  const PrimeField& f = *shares[0].point.field();
  const auto lambda = lagrange_at_zero(f, xs);
  FieldElement acc = f.zero();
  for (std::size_t i = 0; i < need; ++i) acc += lambda[i] * shares[i].point;
  return acc;
}

}  // namespace kepmpc
