#pragma once

#include <cstdint>
#include <string>

#include "reclab/rat.hpp"

namespace reclab {

using u128 = unsigned __int128;
using i128 = __int128;

std::string u128_hex(u128 v);
u128 u128_from_hex(const std::string& s);
BigInt u128_to_mpz(u128 v);
u128 mpz_to_u128_sat(const BigInt& z);  // clamps to [0, 2^128-1]

inline u128 sat_add(u128 a, u128 b) {
  u128 r = a + b;
  return r < a ? ~u128{0} : r;
}
u128 sat_mul(u128 a, u128 b);

// A point of the circle R/Z as a 128-bit binary fraction value/2^128 with a
// sound accumulated error bound: the true point lies within err/2^128 of the
// representative. Wrapping arithmetic on representatives is exact mod 1, so
// only err grows (and saturates rather than overflowing).
struct Fixed128 {
  u128 value = 0;
  u128 err = 0;

  // err 0 when den is a power of two, 1 otherwise.
  static Fixed128 from_rat(const Rat& q);

  Fixed128 add(const Fixed128& o) const { return {value + o.value, sat_add(err, o.err)}; }
  Fixed128 sub(const Fixed128& o) const { return {value - o.value, sat_add(err, o.err)}; }
  Fixed128 mul_int(i128 k) const;

  friend bool operator==(const Fixed128&, const Fixed128&) = default;
};

// min(a-b, b-a) in wrapping arithmetic: distance to the nearest integer, as a
// fraction of 2^128. At most 2^127.
u128 torus_dist_ulps(u128 a, u128 b);

// eps scaled by 2^128, floor and ceil, plus floor(eps/4 * 2^128) for the
// precision-exhaustion guard. Requires 0 < eps <= 1/2.
struct EpsUlps {
  u128 lo = 0;
  u128 hi = 0;
  u128 quarter = 0;
  Rat eps;
};
EpsUlps eps_to_ulps(const Rat& eps);

enum class Verdict : std::uint8_t { In, Out, Boundary };

// Decides dist < eps with a guard band: In and Out are certain, Boundary
// means the error bound straddles the threshold. Throws precision_error once
// err exceeds eps/4 (the representation cannot support this test at all).
Verdict dist_verdict(u128 dist, u128 err, const EpsUlps& eps);

}  // namespace reclab
