#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "kepmpc/field/prime_field.hpp"
#include "kepmpc/field/shamir.hpp"

using namespace kepmpc;

namespace {

double chi_square_critical(double df, double alpha) {
  boost::math::chi_squared dist(df);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

std::vector<SecretShare> pick(const std::vector<SecretShare>& s, std::initializer_list<int> parties) {
  std::vector<SecretShare> out;
  for (int p : parties) out.push_back(s[p - 1]);
  return out;
}

}  // namespace

TEST_CASE("field rejects non-primes and out-of-range moduli") {
  CHECK_THROWS_AS(PrimeField::create(BigInt(15)), FieldError);
  CHECK_THROWS_AS(PrimeField::create(BigInt(2)), FieldError);
  CHECK_THROWS_AS(PrimeField::create(BigInt(1) << 256), FieldError);
  CHECK_NOTHROW(PrimeField::create(BigInt(101)));
}

TEST_CASE("default field is the 256-bit secp256k1 prime") {
  auto f = PrimeField::default_field();
  const BigInt expect = (BigInt(1) << 256) - (BigInt(1) << 32) - 977;
  CHECK(f->modulus() == expect);
  CHECK(f->bits() == 256);
  CHECK(f->byte_width() == 32);
}

TEST_CASE("arithmetic agrees with big-integer reference") {
  auto f = PrimeField::default_field();
  Rng rng(7);
  const BigInt& p = f->modulus();
  for (int i = 0; i < 200; ++i) {
    const FieldElement a = f->random(rng);
    const FieldElement b = f->random(rng);
    const BigInt A = a.to_big();
    const BigInt B = b.to_big();
    CHECK((a + b).to_big() == (A + B) % p);
    CHECK((a - b).to_big() == ((A - B) % p + p) % p);
    CHECK((a * b).to_big() == (A * B) % p);
    if (!a.is_zero()) CHECK((a * a.inverse()) == f->one());
  }
}

TEST_CASE("linearity holds exhaustively over a small field") {
  auto f = PrimeField::create(BigInt(13));
  for (int a = 0; a < 13; ++a)
    for (int b = 0; b < 13; ++b)
      for (int x = 0; x < 13; ++x)
        for (int y = 0; y < 13; ++y) {
          const auto r = f->from_int(a) * f->from_int(x) + f->from_int(b) * f->from_int(y);
          CHECK(r.to_big() == (a * x + b * y) % 13);
        }
}

TEST_CASE("signed decoding maps the upper half to negatives") {
  auto f = PrimeField::default_field();
  CHECK(f->from_int(-1).to_big() == f->modulus() - 1);
  CHECK(f->from_int(-1).to_signed() == -1);
  CHECK(f->from_int(42).to_int64() == 42);
  CHECK(f->from_int(INT64_MIN).to_int64() == INT64_MIN);
  CHECK_THROWS_AS(f->from_big(BigInt(1) << 100).to_int64(), FieldError);
}

TEST_CASE("canonical serialization is fixed-width big-endian") {
  auto f = PrimeField::default_field();
  std::vector<std::uint8_t> buf(32);
  f->serialize(f->from_int(0x0102), buf.data());
  CHECK(buf[30] == 0x01);
  CHECK(buf[31] == 0x02);
  CHECK(buf[0] == 0);
  Rng rng(3);
  std::vector<FieldElement> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(f->random(rng));
  const auto bytes = serialize_elements(*f, xs);
  CHECK(bytes.size() == 320);
  CHECK(deserialize_elements(*f, bytes) == xs);

  // Unreduced encodings are rejected.
  std::vector<std::uint8_t> big(32, 0xFF);
  CHECK_THROWS_AS(f->deserialize(big), FieldError);

  auto small = PrimeField::create(BigInt(65537));
  CHECK(small->byte_width() == 3);
}

TEST_CASE("share and reconstruct") {
  auto f = PrimeField::default_field();
  Rng rng(11);
  SharingParams params{1, 3};

  SUBCASE("zero") {
    auto s = share(*f, 0, params, rng, 64);
    CHECK(reconstruct(s, 1).to_signed() == 0);
  }
  SUBCASE("negative values use p - x") {
    auto s = share(*f, -1, params, rng, 64);
    const auto v = reconstruct(s, 1);
    CHECK(v.to_big() == f->modulus() - 1);
    CHECK(v.to_signed() == -1);
  }
  SUBCASE("any two of three parties") {
    auto s = share(*f, 7, params, rng, 64);
    CHECK(reconstruct(pick(s, {1, 2}), 1).to_signed() == 7);
    CHECK(reconstruct(pick(s, {2, 3}), 1).to_signed() == 7);
    CHECK(reconstruct(pick(s, {3, 1}), 1).to_signed() == 7);
  }
  SUBCASE("one share is not enough") {
    auto s = share(*f, 7, params, rng, 64);
    CHECK_THROWS_AS(reconstruct(pick(s, {2}), 1), InsufficientSharesError);
    CHECK_THROWS_AS(reconstruct(pick(s, {2, 2}), 1), InsufficientSharesError);
  }
  SUBCASE("range is enforced") {
    CHECK_THROWS_AS(share(*f, BigInt(1) << 64, params, rng, 64), RangeError);
    CHECK_THROWS_AS(share(*f, -(BigInt(1) << 64), params, rng, 64), RangeError);
    CHECK_NOTHROW(share(*f, (BigInt(1) << 64) - 1, params, rng, 64));
  }
}

TEST_CASE("round trip on random signed values with every pair of parties") {
  auto f = PrimeField::default_field();
  Rng rng(2024);
  std::uniform_int_distribution<std::int64_t> dist(INT64_MIN + 1, INT64_MAX);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t x = dist(rng);
    auto s = share(*f, x, {1, 3}, rng, 64);
    CHECK(reconstruct(pick(s, {1, 2}), 1).to_int64() == x);
    CHECK(reconstruct(pick(s, {1, 3}), 1).to_int64() == x);
    CHECK(reconstruct(pick(s, {2, 3}), 1).to_int64() == x);
  }
}

TEST_CASE("higher thresholds need t+1 shares") {
  auto f = PrimeField::default_field();
  Rng rng(5);
  auto s = share(*f, -12345, {2, 5}, rng, 64);
  CHECK(reconstruct(pick(s, {5, 1, 3}), 2).to_signed() == -12345);
  CHECK_THROWS_AS(reconstruct(pick(s, {1, 2}), 2), InsufficientSharesError);
}

TEST_CASE("local linear combination of shares") {
  auto f = PrimeField::default_field();
  Rng rng(9);
  SharingParams params{1, 3};
  auto x = share(*f, 17, params, rng, 64);
  auto y = share(*f, -5, params, rng, 64);
  std::vector<SecretShare> id;
  std::vector<SecretShare> diff;
  std::vector<SecretShare> combo;
  for (int i = 0; i < 3; ++i) {
    id.push_back(local_linear(f->one(), x[i], f->zero(), y[i]));
    diff.push_back(local_linear(f->one(), x[i], f->from_int(-1), x[i]));
    combo.push_back(local_linear(f->from_int(3), x[i], f->from_int(-4), y[i]));
  }
  CHECK(reconstruct(id, 1).to_signed() == 17);
  CHECK(reconstruct(diff, 1).to_signed() == 0);
  CHECK(reconstruct(combo, 1).to_signed() == 3 * 17 + 4 * 5);
}

TEST_CASE("a single share is uniformly distributed") {
  const int p = 31;
  auto f = PrimeField::create(BigInt(p));
  Rng rng(77);
  const int runs = p * 300;
  std::vector<int> counts(p, 0);
  for (int i = 0; i < runs; ++i) {
    auto s = share_element(f->from_int(5), {1, 3}, rng);
    counts[static_cast<int>(s[1].point.to_big())]++;
  }
  const double expected = static_cast<double>(runs) / p;
  double chi2 = 0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < chi_square_critical(p - 1, 0.001));
}
