// Prime-field arithmetic for the MPC engine.
//
// Elements are stored in Montgomery form over four 64-bit limbs, so any odd
// prime below 2^256 is supported. Small primes are allowed, which the unit
// tests use for exhaustive and statistical checks.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kepmpc {

using BigInt = boost::multiprecision::cpp_int;
using Rng = std::mt19937_64;
using Limbs = std::array<std::uint64_t, 4>;

namespace detail {

using u128 = unsigned __int128;

// a >= b on raw limbs.
inline bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

// out = a - b, returns the borrow.
inline std::uint64_t sub_raw(Limbs& out, const Limbs& a, const Limbs& b) {
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    const u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    out[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

// out = a + b, returns the carry.
inline std::uint64_t add_raw(Limbs& out, const Limbs& a, const Limbs& b) {
  std::uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    const u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    out[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  return carry;
}

}  // namespace detail

class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldElement;

class PrimeField {
 public:
  // Throws FieldError unless `modulus` is an odd prime in (2, 2^256).
  static std::shared_ptr<const PrimeField> create(const BigInt& modulus);
  static std::shared_ptr<const PrimeField> create(std::string_view modulus);

  // 2^256 - 2^32 - 977.
  static std::shared_ptr<const PrimeField> default_field();

  const BigInt& modulus() const { return modulus_big_; }
  unsigned bits() const { return bits_; }
  std::size_t byte_width() const { return (bits_ + 7) / 8; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(std::int64_t v) const;
  FieldElement from_uint(std::uint64_t v) const;
  // Reduces `v` modulo p; negative values map to p - |v|.
  FieldElement from_big(const BigInt& v) const;
  FieldElement random(Rng& rng) const;

  // Canonical encoding: big-endian, byte_width() bytes.
  void serialize(const FieldElement& e, std::uint8_t* out) const;
  FieldElement deserialize(std::span<const std::uint8_t> in) const;

  // Low-level limb operations on Montgomery representatives.
  Limbs mont_mul(const Limbs& a, const Limbs& b) const;
  Limbs add(const Limbs& a, const Limbs& b) const {
    Limbs sum;
    const std::uint64_t carry = detail::add_raw(sum, a, b);
    Limbs reduced;
    const std::uint64_t borrow = detail::sub_raw(reduced, sum, p_);
    return (carry != 0 || borrow == 0) ? reduced : sum;
  }
  Limbs sub(const Limbs& a, const Limbs& b) const {
    Limbs diff;
    if (detail::sub_raw(diff, a, b) != 0) detail::add_raw(diff, diff, p_);
    return diff;
  }
  Limbs to_mont(const Limbs& plain) const { return mont_mul(plain, r2_); }
  // a * k by doubling and adding; cheaper than mont_mul for small |k|.
  Limbs mul_small(const Limbs& a, std::int64_t k) const;
  Limbs from_mont(const Limbs& mont) const;

 private:
  PrimeField() = default;

  BigInt modulus_big_;
  Limbs p_{};
  Limbs r2_{};
  Limbs one_mont_{};
  std::uint64_t n0inv_ = 0;
  unsigned bits_ = 0;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const PrimeField* field, const Limbs& mont) : field_(field), v_(mont) {}

  const PrimeField* field() const { return field_; }
  const Limbs& mont() const { return v_; }

  FieldElement operator+(const FieldElement& o) const { return {field_, field_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {field_, field_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {field_, field_->mont_mul(v_, o.v_)}; }
  FieldElement operator-() const { return {field_, field_->sub(Limbs{}, v_)}; }
  FieldElement& operator+=(const FieldElement& o) { v_ = field_->add(v_, o.v_); return *this; }
  FieldElement& operator-=(const FieldElement& o) { v_ = field_->sub(v_, o.v_); return *this; }
  FieldElement& operator*=(const FieldElement& o) { v_ = field_->mont_mul(v_, o.v_); return *this; }

  FieldElement times(std::int64_t k) const { return {field_, field_->mul_small(v_, k)}; }

  bool operator==(const FieldElement& o) const { return v_ == o.v_; }
  bool is_zero() const { return v_ == Limbs{}; }

  FieldElement pow(const BigInt& e) const;
  // Throws FieldError on zero.
  FieldElement inverse() const;

  // Canonical representative in [0, p).
  BigInt to_big() const;
  Limbs canonical() const { return field_->from_mont(v_); }
  // Values below p/2 decode as non-negative, the rest as value - p.
  BigInt to_signed() const;
  // Signed decoding; throws FieldError when the value does not fit.
  std::int64_t to_int64() const;
  std::string to_string() const { return to_signed().str(); }

 private:
  const PrimeField* field_ = nullptr;
  Limbs v_{};
};

std::vector<std::uint8_t> serialize_elements(const PrimeField& f, std::span<const FieldElement> elems);
std::vector<FieldElement> deserialize_elements(const PrimeField& f, std::span<const std::uint8_t> bytes);

}  // namespace kepmpc
