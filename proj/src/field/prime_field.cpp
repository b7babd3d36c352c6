#include "kepmpc/field/prime_field.hpp"

#include <bit>

#include <boost/multiprecision/miller_rabin.hpp>

namespace kepmpc {

namespace {

using u128 = unsigned __int128;

Limbs limbs_from_big(const BigInt& v) {
  Limbs out{};
  BigInt x = v;
  for (auto& limb : out) {
    limb = static_cast<std::uint64_t>(x & BigInt(~std::uint64_t{0}));
    x >>= 64;
  }
  return out;
}

BigInt big_from_limbs(const Limbs& l) {
  BigInt out = 0;
  for (int i = 3; i >= 0; --i) {
    out <<= 64;
    out += l[i];
  }
  return out;
}

using detail::add_raw;
using detail::geq;
using detail::sub_raw;

}  // namespace

std::shared_ptr<const PrimeField> PrimeField::create(const BigInt& modulus) {
  if (modulus <= 2 || (modulus & 1) == 0) throw FieldError("field modulus must be an odd prime");
  if (msb(modulus) >= 256) throw FieldError("field modulus must be below 2^256");
  if (!boost::multiprecision::miller_rabin_test(modulus, 32)) {
    throw FieldError("field modulus is not prime: " + modulus.str());
  }
  std::shared_ptr<PrimeField> f(new PrimeField());
  f->modulus_big_ = modulus;
  f->p_ = limbs_from_big(modulus);
  f->bits_ = static_cast<unsigned>(msb(modulus)) + 1;
  const BigInt r = BigInt(1) << 256;
  f->r2_ = limbs_from_big((r * r) % modulus);
  f->one_mont_ = limbs_from_big(r % modulus);
  // Newton iteration for p^{-1} mod 2^64, then negate.
  std::uint64_t inv = 1;
  for (int i = 0; i < 7; ++i) inv *= 2 - f->p_[0] * inv;
  f->n0inv_ = ~inv + 1;
  return f;
}

std::shared_ptr<const PrimeField> PrimeField::create(std::string_view modulus) {
  try {
    return create(BigInt(std::string(modulus)));
  } catch (const FieldError&) {
    throw;
  } catch (const std::exception& e) {
    throw FieldError("cannot parse field modulus '" + std::string(modulus) + "': " + e.what());
  }
}

std::shared_ptr<const PrimeField> PrimeField::default_field() {
  static const std::shared_ptr<const PrimeField> f =
      create(std::string_view("0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F"));
  return f;
}

// CIOS Montgomery multiplication with a two-word overflow tail, valid for any
// odd modulus below 2^256.
Limbs PrimeField::mont_mul(const Limbs& a, const Limbs& b) const {
  std::uint64_t t[6] = {0, 0, 0, 0, 0, 0};
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    std::uint64_t carry = 0;
#pragma GCC unroll 4
    for (int j = 0; j < 4; ++j) {
      u128 acc = static_cast<u128>(a[j]) * b[i] + t[j] + carry;
      t[j] = static_cast<std::uint64_t>(acc);
      carry = static_cast<std::uint64_t>(acc >> 64);
    }
    u128 acc = static_cast<u128>(t[4]) + carry;
    t[4] = static_cast<std::uint64_t>(acc);
    t[5] = static_cast<std::uint64_t>(acc >> 64);

    const std::uint64_t m = t[0] * n0inv_;
    acc = static_cast<u128>(m) * p_[0] + t[0];
    carry = static_cast<std::uint64_t>(acc >> 64);
#pragma GCC unroll 3
    for (int j = 1; j < 4; ++j) {
      acc = static_cast<u128>(m) * p_[j] + t[j] + carry;
      t[j - 1] = static_cast<std::uint64_t>(acc);
      carry = static_cast<std::uint64_t>(acc >> 64);
    }
    acc = static_cast<u128>(t[4]) + carry;
    t[3] = static_cast<std::uint64_t>(acc);
    t[4] = t[5] + static_cast<std::uint64_t>(acc >> 64);
  }
  Limbs out{t[0], t[1], t[2], t[3]};
  if (t[4] != 0 || geq(out, p_)) sub_raw(out, out, p_);
  return out;
}

Limbs PrimeField::mul_small(const Limbs& a, std::int64_t k) const {
  const bool neg = k < 0;
  const std::uint64_t mag = neg ? ~static_cast<std::uint64_t>(k) + 1 : static_cast<std::uint64_t>(k);
  Limbs acc{};
  if (mag >= (std::uint64_t{1} << 12)) {
    acc = mont_mul(a, to_mont(Limbs{mag, 0, 0, 0}));
  } else if (mag != 0) {
    acc = a;
    for (int bit = 62 - std::countl_zero(mag); bit >= 0; --bit) {
      acc = add(acc, acc);
      if ((mag >> bit) & 1u) acc = add(acc, a);
    }
  }
  return neg ? sub(Limbs{}, acc) : acc;
}

Limbs PrimeField::from_mont(const Limbs& mont) const { return mont_mul(mont, Limbs{1, 0, 0, 0}); }

FieldElement PrimeField::zero() const { return {this, Limbs{}}; }
FieldElement PrimeField::one() const { return {this, one_mont_}; }

FieldElement PrimeField::from_uint(std::uint64_t v) const {
  Limbs plain{v, 0, 0, 0};
  if (geq(plain, p_)) return from_big(BigInt(v));
  return {this, to_mont(plain)};
}

FieldElement PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return from_uint(static_cast<std::uint64_t>(v));
  // Avoid overflow on INT64_MIN.
  const std::uint64_t mag = ~static_cast<std::uint64_t>(v) + 1;
  return -from_uint(mag);
}

FieldElement PrimeField::from_big(const BigInt& v) const {
  BigInt r = v % modulus_big_;
  if (r < 0) r += modulus_big_;
  return {this, to_mont(limbs_from_big(r))};
}

FieldElement PrimeField::random(Rng& rng) const {
  const unsigned top_bits = bits_ % 64 == 0 ? 64 : bits_ % 64;
  const std::size_t top_limb = (bits_ - 1) / 64;
  const std::uint64_t top_mask = top_bits == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << top_bits) - 1);
  for (;;) {
    Limbs l{};
    for (std::size_t i = 0; i <= top_limb; ++i) l[i] = rng();
    l[top_limb] &= top_mask;
    // A uniform residue is uniform in Montgomery form too.
    if (!geq(l, p_)) return {this, l};
  }
}

void PrimeField::serialize(const FieldElement& e, std::uint8_t* out) const {
  const Limbs c = from_mont(e.mont());
  const std::size_t w = byte_width();
  for (std::size_t i = 0; i < w; ++i) {
    // Byte i counts from the most significant end.
    const std::size_t bit = 8 * (w - 1 - i);
    out[i] = static_cast<std::uint8_t>(c[bit / 64] >> (bit % 64));
  }
}

FieldElement PrimeField::deserialize(std::span<const std::uint8_t> in) const {
  const std::size_t w = byte_width();
  if (in.size() != w) throw FieldError("field element encoding has wrong width");
  Limbs c{};
  for (std::size_t i = 0; i < w; ++i) {
    const std::size_t bit = 8 * (w - 1 - i);
    c[bit / 64] |= static_cast<std::uint64_t>(in[i]) << (bit % 64);
  }
  if (geq(c, p_)) throw FieldError("field element encoding is not reduced");
  return {this, to_mont(c)};
}

FieldElement FieldElement::pow(const BigInt& e) const {
  FieldElement result = field_->one();
  FieldElement base = *this;
  const unsigned n = e == 0 ? 0 : static_cast<unsigned>(msb(e)) + 1;
  for (unsigned i = 0; i < n; ++i) {
    if (bit_test(e, i)) result *= base;
    base *= base;
  }
  return result;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw FieldError("inverse of zero");
  return pow(field_->modulus() - 2);
}

BigInt FieldElement::to_big() const { return big_from_limbs(field_->from_mont(v_)); }

BigInt FieldElement::to_signed() const {
  BigInt v = to_big();
  if (v > field_->modulus() / 2) v -= field_->modulus();
  return v;
}

std::int64_t FieldElement::to_int64() const {
  const BigInt v = to_signed();
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw FieldError("field element does not fit in 64 bits: " + v.str());
  }
  return static_cast<std::int64_t>(v);
}

std::vector<std::uint8_t> serialize_elements(const PrimeField& f, std::span<const FieldElement> elems) {
  std::vector<std::uint8_t> out(elems.size() * f.byte_width());
  for (std::size_t i = 0; i < elems.size(); ++i) f.serialize(elems[i], out.data() + i * f.byte_width());
  return out;
}

std::vector<FieldElement> deserialize_elements(const PrimeField& f, std::span<const std::uint8_t> bytes) {
  const std::size_t w = f.byte_width();
  if (bytes.size() % w != 0) throw FieldError("payload is not a whole number of field elements");
  std::vector<FieldElement> out;
  out.reserve(bytes.size() / w);
  for (std::size_t off = 0; off < bytes.size(); off += w) out.push_back(f.deserialize(bytes.subspan(off, w)));
  return out;
}

}  // namespace kepmpc
