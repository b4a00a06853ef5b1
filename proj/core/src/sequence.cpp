#include "reclab/sequence.hpp"

#include <sstream>
#include <stdexcept>

#include "reclab/checked.hpp"

namespace reclab {

namespace {
constexpr int kMaxGeneratedCount = 64;
}

SequenceSpec SequenceSpec::explicit_terms(std::vector<std::int64_t> terms) {
  SequenceSpec s;
  s.v_ = Explicit{std::move(terms)};
  return s;
}

SequenceSpec SequenceSpec::geometric(std::int64_t first, std::int64_t ratio, int count) {
  if (first < 1) throw std::invalid_argument("geometric: first must be >= 1");
  if (ratio < 2) throw std::invalid_argument("geometric: ratio must be >= 2");
  if (count < 1 || count > kMaxGeneratedCount)
    throw std::invalid_argument("geometric: count out of range");
  SequenceSpec s;
  s.v_ = Geometric{first, ratio, count};
  return s;
}

SequenceSpec SequenceSpec::super_lacunary(std::int64_t seed, std::int64_t slack, int count) {
  if (seed < 1) throw std::invalid_argument("super_lacunary: seed must be >= 1");
  if (slack < 1) throw std::invalid_argument("super_lacunary: slack must be >= 1");
  if (count < 1 || count > kMaxGeneratedCount)
    throw std::invalid_argument("super_lacunary: count out of range");
  SequenceSpec s;
  s.v_ = SuperLacunary{seed, slack, count};
  return s;
}

std::vector<std::int64_t> SequenceSpec::terms() const {
  if (const auto* e = std::get_if<Explicit>(&v_)) return e->terms;
  if (const auto* g = std::get_if<Geometric>(&v_)) {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(g->count));
    std::int64_t t = g->first;
    for (int i = 0; i < g->count; ++i) {
      out.push_back(t);
      if (i + 1 < g->count) t = checked_mul(t, g->ratio);
    }
    return out;
  }
  const auto& sl = std::get<SuperLacunary>(v_);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(sl.count));
  std::int64_t sum = 0;
  std::int64_t t = sl.seed;
  for (int i = 0; i < sl.count; ++i) {
    out.push_back(t);
    sum = checked_add(sum, t);
    if (i + 1 < sl.count) t = checked_add(checked_mul(2, sum), sl.slack);
  }
  return out;
}

std::size_t SequenceSpec::length() const {
  if (const auto* e = std::get_if<Explicit>(&v_)) return e->terms.size();
  if (const auto* g = std::get_if<Geometric>(&v_)) return static_cast<std::size_t>(g->count);
  return static_cast<std::size_t>(std::get<SuperLacunary>(v_).count);
}

bool terms_super_lacunary(const std::vector<std::int64_t>& terms) {
  if (terms.empty()) return false;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i] < 1) return false;
    if (i > 0 && terms[i] <= checked_mul(2, sum)) return false;
    sum = checked_add(sum, terms[i]);
  }
  return true;
}

bool SequenceSpec::is_super_lacunary() const { return terms_super_lacunary(terms()); }

std::string SequenceSpec::describe() const {
  std::ostringstream os;
  if (const auto* e = std::get_if<Explicit>(&v_)) {
    os << "explicit:";
    for (std::size_t i = 0; i < e->terms.size(); ++i)
      os << (i ? "," : "") << e->terms[i];
  } else if (const auto* g = std::get_if<Geometric>(&v_)) {
    os << "geometric:" << g->first << "," << g->ratio << "," << g->count;
  } else {
    const auto& sl = std::get<SuperLacunary>(v_);
    os << "super-lacunary:" << sl.seed << "," << sl.slack << "," << sl.count;
  }
  return os.str();
}

SequenceSpec make_super_lacunary(std::int64_t seed, std::int64_t slack, int count) {
  SequenceSpec s = SequenceSpec::super_lacunary(seed, slack, count);
  if (!s.is_super_lacunary())
    throw std::logic_error("generated sequence failed the growth check");
  return s;
}

}  // namespace reclab
