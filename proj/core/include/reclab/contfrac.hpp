#pragma once

#include <string>
#include <vector>

#include "reclab/fixed128.hpp"
#include "reclab/rat.hpp"

namespace reclab {

// A quadratic-irrational target named by its continued fraction. Named tags
// keep runs reproducible: the bit pattern of the Fixed value is a pure
// function of the tag.
struct ContinuedFraction {
  std::string tag;               // "golden", "sqrt2m1", or "" for explicit terms
  std::vector<long> terms;       // [a0; a1, a2, ...]
};

// Parses "golden", "sqrt2m1" or "0;1,2,3"-style explicit term lists.
ContinuedFraction parse_cf(const std::string& text);
std::string cf_str(const ContinuedFraction& cf);

// Convergent h_k/q_k after consuming `count` partial quotients (named tags
// supply terms on demand; explicit lists are truncated at their length).
Rat cf_convergent(const ContinuedFraction& cf, std::size_t count);

// Fixed-point value with a sound error bound derived from the last two
// convergent denominators. Named tags expand until err is ~1 ulp; explicit
// term lists give whatever precision the terms support.
Fixed128 cf_to_fixed(const ContinuedFraction& cf);

// A strictly finer approximation for independent re-checks.
Rat cf_high_precision(const ContinuedFraction& cf, unsigned min_bits);

}  // namespace reclab
