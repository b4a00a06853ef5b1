#include "reclab/setgen.hpp"

#include <algorithm>

#include "reclab/checked.hpp"
#include "reclab/errors.hpp"

namespace reclab {

namespace {

std::vector<std::int64_t> checked_terms(const SequenceSpec& p) {
  auto t = p.terms();
  if (t.empty()) throw std::invalid_argument("empty generator sequence");
  if (t.size() > kMaxGeneratorLength)
    throw budget_error("generator length " + std::to_string(t.size()) +
                       " exceeds the 2^n cap of " + std::to_string(kMaxGeneratorLength));
  return t;
}

IntegerWindow from_sums(std::vector<std::int64_t> sums) {
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  std::int64_t lo = sums.front();
  std::int64_t hi = sums.back();
  return IntegerWindow::from_sorted(lo, hi, std::move(sums));
}

}  // namespace

IntegerWindow generate_fs(const SequenceSpec& p) {
  auto t = checked_terms(p);
  std::size_t n = t.size();
  std::vector<std::int64_t> sums;
  sums.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s = checked_add(s, t[i]);
    sums.push_back(s);
  }
  return from_sums(std::move(sums));
}

IntegerWindow generate_sg(const SequenceSpec& p, int d) {
  if (d < 1) throw std::invalid_argument("generate_sg: d must be >= 1");
  auto t = checked_terms(p);
  std::size_t n = t.size();
  std::vector<std::int64_t> sums;
  // Depth-first over index subsets obeying the gap rule; the sum is extended
  // incrementally so only valid patterns are ever visited.
  std::vector<std::pair<std::size_t, std::int64_t>> stack;  // (last index, partial sum)
  for (std::size_t first = 0; first < n; ++first) {
    stack.clear();
    stack.emplace_back(first, t[first]);
    while (!stack.empty()) {
      auto [last, sum] = stack.back();
      stack.pop_back();
      sums.push_back(sum);
      std::size_t limit = std::min(n, last + 1 + static_cast<std::size_t>(d));
      for (std::size_t next = last + 1; next < limit; ++next)
        stack.emplace_back(next, checked_add(sum, t[next]));
    }
  }
  return from_sums(std::move(sums));
}

}  // namespace reclab
