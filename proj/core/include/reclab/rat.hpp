#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace reclab {

using BigInt = mpz_class;
using Rat = mpq_class;  // always kept canonical (lowest terms, positive denominator)

Rat make_rat(std::int64_t num, std::int64_t den);

// "p/q" or "p"; throws std::invalid_argument on malformed input or q == 0.
Rat parse_rat(const std::string& s);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& q);

// Representative in [0, 1).
Rat mod1(const Rat& q);

// Distance to the nearest integer of a - b; always in [0, 1/2].
Rat torus_dist_rat(const Rat& a, const Rat& b);

Rat rat_pow(const Rat& q, unsigned k);

// Binomial coefficient; n may be negative (polynomial extension).
BigInt binom(const BigInt& n, unsigned k);

}  // namespace reclab
