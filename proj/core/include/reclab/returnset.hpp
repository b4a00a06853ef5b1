#pragma once

#include <string>

#include "reclab/system.hpp"
#include "reclab/window.hpp"

namespace reclab {

inline constexpr std::int64_t kMaxScanSpan = std::int64_t{1} << 27;

// { n in [lo, hi] : T^n x in u }. Indices the guard band cannot decide are
// listed in `boundary`, never silently included or dropped. Throws
// precision_error when the error bound is too coarse for eps at all.
struct ReturnSetResult {
  IntegerWindow definite;
  std::vector<std::int64_t> boundary;
};

ReturnSetResult return_set(const SystemSpec& sys, const SystemPoint& x,
                           const Neighborhood& u, std::int64_t lo, std::int64_t hi,
                           int threads = 1);

// Single-index membership via the closed-form orbit; the independent route
// used by report verification.
Verdict membership_verdict(const SystemSpec& sys, const SystemPoint& x,
                           const Neighborhood& u, std::int64_t n);

// The {0,1} coding of a Sturmian system over [lo, hi]; '?' marks positions
// the guard band cannot decide (also listed in `boundaries`).
struct SturmianCoding {
  std::int64_t lo = 0;
  std::string symbols;
  std::vector<std::int64_t> boundaries;

  char at(std::int64_t n) const { return symbols[static_cast<std::size_t>(n - lo)]; }
};

SturmianCoding sturmian_code(const SystemSpec& sys, std::int64_t lo, std::int64_t hi);

}  // namespace reclab
