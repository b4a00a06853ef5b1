#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "reclab/rat.hpp"

namespace reclab {

// An explicitly enumerated subset of Z restricted to the closed interval
// [lo, hi]. Members are strictly ascending and all lie in the interval.
class IntegerWindow {
 public:
  IntegerWindow() = default;
  IntegerWindow(std::int64_t lo, std::int64_t hi);

  // Requires sorted strictly-ascending members inside [lo, hi]; throws otherwise.
  static IntegerWindow from_sorted(std::int64_t lo, std::int64_t hi,
                                   std::vector<std::int64_t> members);
  // Sorts, deduplicates and drops values outside [lo, hi].
  static IntegerWindow from_values(std::int64_t lo, std::int64_t hi,
                                   std::vector<std::int64_t> values);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  const std::vector<std::int64_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  bool contains(std::int64_t m) const;
  IntegerWindow restricted(std::int64_t lo, std::int64_t hi) const;

  friend bool operator==(const IntegerWindow&, const IntegerWindow&) = default;

 private:
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::vector<std::int64_t> members_;
};

IntegerWindow window_union(std::span<const IntegerWindow> parts,
                           std::int64_t lo, std::int64_t hi);
IntegerWindow window_intersection(std::span<const IntegerWindow> parts,
                                  std::int64_t lo, std::int64_t hi);

// { x - y : x, y in a, x > y }, housed on [0, hi - lo].
IntegerWindow delta_set(const IntegerWindow& a);

// Largest gap between consecutive members, including the boundary gaps
// (first - lo) and (hi - last); nullopt for the empty window.
std::optional<std::int64_t> syndetic_gap(const IntegerWindow& a);

// Sliding-window estimate of the upper Banach density: the maximum of
// |members ∩ I| / block_len over all blocks I of block_len consecutive
// integers inside [lo, hi]. Requires 1 <= block_len <= window length.
Rat banach_density_upper(const IntegerWindow& a, std::int64_t block_len);

}  // namespace reclab
