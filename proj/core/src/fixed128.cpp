#include "reclab/fixed128.hpp"

#include <stdexcept>

#include "reclab/errors.hpp"

namespace reclab {

namespace {

// 256-bit product high half, for overflow detection in sat_mul.
u128 mul_hi(u128 a, u128 b) {
  const u128 mask = (~u128{0}) >> 64;
  u128 a0 = a & mask, a1 = a >> 64;
  u128 b0 = b & mask, b1 = b >> 64;
  u128 mid = a1 * b0 + ((a0 * b0) >> 64);
  u128 mid2 = a0 * b1 + (mid & mask);
  return a1 * b1 + (mid >> 64) + (mid2 >> 64);
}

u128 mpz_to_u128(const BigInt& z) {
  if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 128)
    throw std::overflow_error("value does not fit in 128 bits");
  BigInt hi = z >> 64;
  BigInt lo = z - (hi << 64);
  return (static_cast<u128>(hi.get_ui()) << 64) | static_cast<u128>(lo.get_ui());
}

}  // namespace

BigInt u128_to_mpz(u128 v) {
  BigInt hi(static_cast<unsigned long>(v >> 64));
  BigInt lo(static_cast<unsigned long>(v & ((~u128{0}) >> 64)));
  return (hi << 64) + lo;
}

u128 mpz_to_u128_sat(const BigInt& z) {
  if (sgn(z) < 0) return 0;
  if (mpz_sizeinbase(z.get_mpz_t(), 2) > 128) return ~u128{0};
  return mpz_to_u128(z);
}

std::string u128_hex(u128 v) {
  static const char* digits = "0123456789abcdef";
  std::string out(32, '0');
  for (int i = 31; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[static_cast<unsigned>(v & 0xf)];
    v >>= 4;
  }
  return out;
}

u128 u128_from_hex(const std::string& s) {
  if (s.empty() || s.size() > 32) throw std::invalid_argument("bad u128 hex");
  u128 v = 0;
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw std::invalid_argument("bad u128 hex digit");
    v = (v << 4) | static_cast<unsigned>(d);
  }
  return v;
}

u128 sat_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  if (mul_hi(a, b) != 0) return ~u128{0};
  return a * b;
}

Fixed128 Fixed128::from_rat(const Rat& q) {
  Rat r = mod1(q);
  BigInt scaled_num = r.get_num() << 128;
  BigInt val;
  mpz_fdiv_q(val.get_mpz_t(), scaled_num.get_mpz_t(), r.get_den().get_mpz_t());
  bool exact = mpz_divisible_p(scaled_num.get_mpz_t(), r.get_den().get_mpz_t()) != 0;
  return {mpz_to_u128(val), exact ? u128{0} : u128{1}};
}

Fixed128 Fixed128::mul_int(i128 k) const {
  u128 uk = static_cast<u128>(k);  // two's complement: wrap-mul is exact mod 1
  u128 mag = k < 0 ? static_cast<u128>(-k) : static_cast<u128>(k);
  return {value * uk, sat_mul(err, mag)};
}

u128 torus_dist_ulps(u128 a, u128 b) {
  u128 d = a - b;
  u128 e = b - a;
  return d < e ? d : e;
}

EpsUlps eps_to_ulps(const Rat& eps) {
  if (eps <= 0 || eps > Rat(1, 2))
    throw std::invalid_argument("eps must lie in (0, 1/2]");
  BigInt num = eps.get_num() << 128;
  BigInt lo, rem;
  mpz_fdiv_qr(lo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), eps.get_den().get_mpz_t());
  BigInt hi = lo + (sgn(rem) != 0 ? 1 : 0);
  BigInt quarter;
  BigInt den4 = eps.get_den() * 4;
  mpz_fdiv_q(quarter.get_mpz_t(), num.get_mpz_t(), den4.get_mpz_t());
  return {mpz_to_u128(lo), mpz_to_u128(hi), mpz_to_u128(quarter), eps};
}

Verdict dist_verdict(u128 dist, u128 err, const EpsUlps& eps) {
  if (err > eps.quarter)
    throw precision_error("accumulated error bound exceeds eps/4; raise the input precision");
  // true distance D satisfies |D*2^128 - dist| <= err
  if (sat_add(dist, err) < eps.lo) return Verdict::In;
  if (dist >= sat_add(eps.hi, err)) return Verdict::Out;
  return Verdict::Boundary;
}

}  // namespace reclab
