#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace reclab::oracle {

std::vector<std::int64_t> fs_bruteforce(std::span<const std::int64_t> terms) {
  std::size_t n = terms.size();
  std::vector<std::int64_t> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s += terms[i];
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::int64_t> sg_bruteforce(std::span<const std::int64_t> terms, int d) {
  std::size_t n = terms.size();
  std::vector<std::int64_t> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    // the epsilon string: bit i is e_{i+1}
    std::size_t first = 0, last = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) { first = i; break; }
    for (std::size_t i = n; i-- > 0;)
      if (mask & (1u << i)) { last = i; break; }
    bool ok = true;
    std::size_t zero_run = 0;
    for (std::size_t i = first; i <= last; ++i) {
      if (mask & (1u << i)) {
        if (zero_run >= static_cast<std::size_t>(d)) { ok = false; break; }
        zero_run = 0;
      } else {
        ++zero_run;
      }
    }
    if (!ok) continue;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s += terms[i];
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rat banach_density_direct(const IntegerWindow& a, std::int64_t block_len) {
  std::int64_t best = 0;
  for (std::int64_t t = a.lo(); t + block_len - 1 <= a.hi(); ++t) {
    std::int64_t c = 0;
    for (std::int64_t v : a.members())
      if (v >= t && v <= t + block_len - 1) ++c;
    best = std::max(best, c);
  }
  Rat q(static_cast<long>(best), static_cast<long>(block_len));
  q.canonicalize();
  return q;
}

namespace {

bool in_ball(const std::vector<Rat>& p, const std::vector<Rat>& c, const Rat& eps) {
  for (std::size_t j = 0; j < p.size(); ++j)
    if (torus_dist_rat(p[j], c[j]) >= eps) return false;
  return true;
}

}  // namespace

std::vector<Rat> weyl_iterate(int depth, const Rat& alpha, std::vector<Rat> x,
                              std::int64_t n) {
  auto step = [&](std::vector<Rat>& v) {
    for (int j = depth - 1; j >= 1; --j) v[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(j - 1)];
    v[0] += alpha;
    for (auto& q : v) q = mod1(q);
  };
  auto step_back = [&](std::vector<Rat>& v) {
    v[0] -= alpha;
    for (int j = 1; j <= depth - 1; ++j) v[static_cast<std::size_t>(j)] -= v[static_cast<std::size_t>(j - 1)];
    for (auto& q : v) q = mod1(q);
  };
  if (n >= 0)
    for (std::int64_t i = 0; i < n; ++i) step(x);
  else
    for (std::int64_t i = 0; i < -n; ++i) step_back(x);
  return x;
}

std::vector<std::int64_t> weyl_return_direct(int depth, const Rat& alpha,
                                             const std::vector<Rat>& x,
                                             const std::vector<Rat>& center,
                                             const Rat& eps, std::int64_t lo,
                                             std::int64_t hi) {
  std::vector<std::int64_t> out;
  std::vector<Rat> p = weyl_iterate(depth, alpha, x, lo);
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (in_ball(p, center, eps)) out.push_back(n);
    if (n < hi) p = weyl_iterate(depth, alpha, p, 1);
  }
  return out;
}

std::vector<std::int64_t> rotation_return_direct(const Rat& alpha, const Rat& x,
                                                 const Rat& center, const Rat& eps,
                                                 std::int64_t lo, std::int64_t hi) {
  return weyl_return_direct(1, alpha, {mod1(x)}, {mod1(center)}, eps, lo, hi);
}

Rat golden_fibonacci(unsigned min_bits) {
  BigInt f1 = 1, f2 = 1;  // F_1, F_2
  BigInt bound = BigInt(1) << min_bits;
  while (f1 * f2 < bound) {
    BigInt f3 = f1 + f2;
    f1 = f2;
    f2 = f3;
  }
  Rat r(f1, f2);
  r.canonicalize();
  return r;
}

Rat sqrt2m1_pell(unsigned min_bits) {
  // convergents of sqrt(2)-1 = [0;2,2,2,...]: h_{k+1} = 2 h_k + h_{k-1}
  BigInt h0 = 0, q0 = 1, h1 = 1, q1 = 2;
  BigInt bound = BigInt(1) << min_bits;
  while (q0 * q1 < bound) {
    BigInt h2 = 2 * h1 + h0;
    BigInt q2 = 2 * q1 + q0;
    h0 = h1; q0 = q1;
    h1 = h2; q1 = q2;
  }
  Rat r(h1, q1);
  r.canonicalize();
  return r;
}

}  // namespace reclab::oracle
