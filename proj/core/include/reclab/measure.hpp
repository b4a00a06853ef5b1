#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "reclab/rat.hpp"

namespace reclab {

// Subset of Z/N as a packed bit vector.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::int64_t n);
  static BitVec from_residues(std::int64_t n, std::span<const std::int64_t> residues);

  std::int64_t universe() const { return n_; }
  bool test(std::int64_t i) const;
  void set(std::int64_t i);
  std::int64_t count() const;
  bool any() const { return count() > 0; }

  BitVec intersect(const BitVec& o) const;
  // { x : (x + s) mod N in *this }, i.e. the preimage under s forward steps.
  BitVec shifted_preimage(std::int64_t s) const;

  std::vector<std::int64_t> residues() const;

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  std::int64_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Cyclic rotation on Z/N with uniform atoms and named subsets; every measure
// query is an exact rational with denominator N.
class FiniteMeasureSystem {
 public:
  FiniteMeasureSystem(std::int64_t modulus, std::int64_t step);

  std::int64_t modulus() const { return modulus_; }
  std::int64_t step() const { return step_; }

  void add_set(const std::string& name, std::span<const std::int64_t> residues);
  const BitVec& set(const std::string& name) const;  // throws on unknown name
  bool has_set(const std::string& name) const;
  const std::map<std::string, BitVec>& sets() const { return sets_; }

  Rat measure(const BitVec& a) const;
  Rat measure(const std::string& name) const;

  // T^{-n} A for the forward map x -> x + step.
  BitVec preimage(const BitVec& a, std::int64_t n) const;

  // Exact measure of A ∩ ⋂_{n in shifts} T^{-n} A.
  Rat measure_intersection(const std::string& name,
                           std::span<const std::int64_t> shifts) const;
  BitVec intersection_set(const BitVec& a, std::span<const std::int64_t> shifts) const;

 private:
  std::int64_t modulus_;
  std::int64_t step_;
  std::map<std::string, BitVec> sets_;
};

}  // namespace reclab
