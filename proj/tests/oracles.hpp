#pragma once

// Independent brute-force reference implementations. These deliberately take
// different routes than the library: the SG oracle filters epsilon strings by
// the literal interior-zero-block rule, return-set oracles run exact rational
// arithmetic against independently computed convergents, and the Weyl oracle
// iterates the one-step map instead of the binomial closed form.

#include <cstdint>
#include <span>
#include <vector>

#include "reclab/rat.hpp"
#include "reclab/window.hpp"

namespace reclab::oracle {

std::vector<std::int64_t> fs_bruteforce(std::span<const std::int64_t> terms);

// Epsilon vectors (e_1..e_n), not all zero; every run of consecutive zeros
// strictly between two ones must have length < d.
std::vector<std::int64_t> sg_bruteforce(std::span<const std::int64_t> terms, int d);

// Direct scan over every block position.
Rat banach_density_direct(const IntegerWindow& a, std::int64_t block_len);

// n in [lo, hi] with max-coordinate torus distance of the rational orbit to
// the center strictly below eps. Orbit advanced by repeated one-step maps.
std::vector<std::int64_t> rotation_return_direct(const Rat& alpha, const Rat& x,
                                                 const Rat& center, const Rat& eps,
                                                 std::int64_t lo, std::int64_t hi);

std::vector<std::int64_t> weyl_return_direct(int depth, const Rat& alpha,
                                             const std::vector<Rat>& x,
                                             const std::vector<Rat>& center,
                                             const Rat& eps, std::int64_t lo,
                                             std::int64_t hi);

// One-step iteration of the Weyl affine map (inverse map for n < 0).
std::vector<Rat> weyl_iterate(int depth, const Rat& alpha, std::vector<Rat> x,
                              std::int64_t n);

// Golden-mean conjugate as an exact Fibonacci convergent ratio with
// |alpha - F_k/F_{k+1}| < 2^-min_bits; independent of the library's
// continued-fraction code.
Rat golden_fibonacci(unsigned min_bits);

// sqrt(2)-1 via Pell recurrences, same contract.
Rat sqrt2m1_pell(unsigned min_bits);

}  // namespace reclab::oracle
