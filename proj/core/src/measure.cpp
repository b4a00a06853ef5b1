#include "reclab/measure.hpp"

#include <bit>
#include <stdexcept>

#include "reclab/checked.hpp"

namespace reclab {

BitVec::BitVec(std::int64_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("bit vector universe must be >= 1");
  words_.assign(static_cast<std::size_t>((n + 63) / 64), 0);
}

BitVec BitVec::from_residues(std::int64_t n, std::span<const std::int64_t> residues) {
  BitVec b(n);
  for (std::int64_t r : residues) b.set(r);
  return b;
}

bool BitVec::test(std::int64_t i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("bit index outside universe");
  return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1;
}

void BitVec::set(std::int64_t i) {
  if (i < 0 || i >= n_) throw std::out_of_range("bit index outside universe");
  words_[static_cast<std::size_t>(i / 64)] |= std::uint64_t{1} << (i % 64);
}

std::int64_t BitVec::count() const {
  std::int64_t c = 0;
  for (std::uint64_t w : words_) c += std::popcount(w);
  return c;
}

BitVec BitVec::intersect(const BitVec& o) const {
  if (n_ != o.n_) throw std::invalid_argument("bit vector universe mismatch");
  BitVec b(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) b.words_[i] = words_[i] & o.words_[i];
  return b;
}

BitVec BitVec::shifted_preimage(std::int64_t s) const {
  std::int64_t sm = mod_floor(s, n_);
  BitVec b(n_);
  for (std::int64_t x = 0; x < n_; ++x) {
    std::int64_t y = x + sm;
    if (y >= n_) y -= n_;
    if (test(y)) b.set(x);
  }
  return b;
}

std::vector<std::int64_t> BitVec::residues() const {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < n_; ++i)
    if (test(i)) out.push_back(i);
  return out;
}

FiniteMeasureSystem::FiniteMeasureSystem(std::int64_t modulus, std::int64_t step)
    : modulus_(modulus), step_(step) {
  if (modulus < 1 || modulus > (std::int64_t{1} << 24))
    throw std::invalid_argument("finite system modulus out of range");
}

void FiniteMeasureSystem::add_set(const std::string& name,
                                  std::span<const std::int64_t> residues) {
  for (std::int64_t r : residues)
    if (r < 0 || r >= modulus_)
      throw std::invalid_argument("set residue outside Z/N: " + name);
  sets_[name] = BitVec::from_residues(modulus_, residues);
}

const BitVec& FiniteMeasureSystem::set(const std::string& name) const {
  auto it = sets_.find(name);
  if (it == sets_.end()) throw std::invalid_argument("unknown set name: " + name);
  return it->second;
}

bool FiniteMeasureSystem::has_set(const std::string& name) const {
  return sets_.contains(name);
}

Rat FiniteMeasureSystem::measure(const BitVec& a) const {
  return make_rat(a.count(), modulus_);
}

Rat FiniteMeasureSystem::measure(const std::string& name) const {
  return measure(set(name));
}

BitVec FiniteMeasureSystem::preimage(const BitVec& a, std::int64_t n) const {
  // T^{-n}A = { x : x + n*step in A }
  std::int64_t nm = mod_floor(n, modulus_);
  std::int64_t km = mod_floor(step_, modulus_);
  return a.shifted_preimage((nm * km) % modulus_);
}

BitVec FiniteMeasureSystem::intersection_set(const BitVec& a,
                                             std::span<const std::int64_t> shifts) const {
  BitVec acc = a;
  for (std::int64_t n : shifts) {
    acc = acc.intersect(preimage(a, n));
    if (!acc.any()) break;
  }
  return acc;
}

Rat FiniteMeasureSystem::measure_intersection(const std::string& name,
                                              std::span<const std::int64_t> shifts) const {
  return measure(intersection_set(set(name), shifts));
}

}  // namespace reclab
