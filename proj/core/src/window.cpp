#include "reclab/window.hpp"

#include <algorithm>
#include <stdexcept>

namespace reclab {

IntegerWindow::IntegerWindow(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw std::invalid_argument("window with lo > hi");
}

IntegerWindow IntegerWindow::from_sorted(std::int64_t lo, std::int64_t hi,
                                         std::vector<std::int64_t> members) {
  IntegerWindow w(lo, hi);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] < lo || members[i] > hi)
      throw std::invalid_argument("window member outside [lo, hi]");
    if (i > 0 && members[i] <= members[i - 1])
      throw std::invalid_argument("window members not strictly ascending");
  }
  w.members_ = std::move(members);
  return w;
}

IntegerWindow IntegerWindow::from_values(std::int64_t lo, std::int64_t hi,
                                         std::vector<std::int64_t> values) {
  IntegerWindow w(lo, hi);
  std::erase_if(values, [&](std::int64_t v) { return v < lo || v > hi; });
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  w.members_ = std::move(values);
  return w;
}

bool IntegerWindow::contains(std::int64_t m) const {
  return std::binary_search(members_.begin(), members_.end(), m);
}

IntegerWindow IntegerWindow::restricted(std::int64_t lo, std::int64_t hi) const {
  IntegerWindow w(lo, hi);
  auto first = std::lower_bound(members_.begin(), members_.end(), lo);
  auto last = std::upper_bound(members_.begin(), members_.end(), hi);
  w.members_.assign(first, last);
  return w;
}

IntegerWindow window_union(std::span<const IntegerWindow> parts,
                           std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> all;
  for (const auto& p : parts)
    all.insert(all.end(), p.members().begin(), p.members().end());
  return IntegerWindow::from_values(lo, hi, std::move(all));
}

IntegerWindow window_intersection(std::span<const IntegerWindow> parts,
                                  std::int64_t lo, std::int64_t hi) {
  if (parts.empty()) throw std::invalid_argument("intersection of zero windows");
  std::vector<std::int64_t> acc(parts[0].members());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::vector<std::int64_t> next;
    std::set_intersection(acc.begin(), acc.end(),
                          parts[i].members().begin(), parts[i].members().end(),
                          std::back_inserter(next));
    acc = std::move(next);
  }
  return IntegerWindow::from_values(lo, hi, std::move(acc));
}

IntegerWindow delta_set(const IntegerWindow& a) {
  std::int64_t span = a.hi() - a.lo();
  std::vector<std::int64_t> diffs;
  const auto& m = a.members();
  diffs.reserve(m.size() * (m.size() + 1) / 2);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      diffs.push_back(m[j] - m[i]);
  return IntegerWindow::from_values(0, span, std::move(diffs));
}

std::optional<std::int64_t> syndetic_gap(const IntegerWindow& a) {
  if (a.empty()) return std::nullopt;
  const auto& m = a.members();
  std::int64_t gap = m.front() - a.lo();
  for (std::size_t i = 1; i < m.size(); ++i)
    gap = std::max(gap, m[i] - m[i - 1]);
  gap = std::max(gap, a.hi() - m.back());
  return gap;
}

Rat banach_density_upper(const IntegerWindow& a, std::int64_t block_len) {
  std::int64_t span = a.hi() - a.lo() + 1;
  if (block_len < 1 || block_len > span)
    throw std::invalid_argument("block_len outside [1, window length]");
  if (a.empty()) return Rat(0);
  // Some optimal block has a member at its left edge or is flush against the
  // right end of the window; two pointers over members cover both cases.
  const auto& m = a.members();
  std::size_t best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > a.hi() - block_len + 1) break;
    if (j < i) j = i;
    while (j < m.size() && m[j] <= m[i] + block_len - 1) ++j;
    best = std::max(best, j - i);
  }
  auto flush = std::lower_bound(m.begin(), m.end(), a.hi() - block_len + 1);
  best = std::max(best, static_cast<std::size_t>(m.end() - flush));
  Rat q(static_cast<long>(best), static_cast<long>(block_len));
  q.canonicalize();
  return q;
}

}  // namespace reclab
