#include "reclab/descriptor.hpp"

#include <stdexcept>

#include "reclab/checked.hpp"
#include "reclab/errors.hpp"

namespace reclab {

SetDescriptor SetDescriptor::explicit_set(IntegerWindow w) {
  SetDescriptor s;
  s.v_ = ExplicitSetDesc{std::move(w)};
  return s;
}

SetDescriptor SetDescriptor::fs(SequenceSpec p) {
  SetDescriptor s;
  s.v_ = FsDesc{std::move(p)};
  return s;
}

SetDescriptor SetDescriptor::sg(SequenceSpec p, int d) {
  if (d < 1) throw std::invalid_argument("sg descriptor: d must be >= 1");
  SetDescriptor s;
  s.v_ = SgDesc{std::move(p), d};
  return s;
}

SetDescriptor SetDescriptor::delta(SetDescriptor inner, std::int64_t source_lo,
                                   std::int64_t source_hi) {
  if (source_lo > source_hi) throw std::invalid_argument("delta source window empty");
  SetDescriptor s;
  s.v_ = DeltaDesc{std::make_shared<SetDescriptor>(std::move(inner)), source_lo,
                   source_hi};
  return s;
}

SetDescriptor SetDescriptor::ap(std::int64_t modulus, std::int64_t residue) {
  if (modulus < 1) throw std::invalid_argument("ap modulus must be >= 1");
  SetDescriptor s;
  s.v_ = ApDesc{modulus, residue};
  return s;
}

SetDescriptor SetDescriptor::return_set_of(SystemSpec sys, SystemPoint x,
                                           Neighborhood u) {
  SetDescriptor s;
  s.v_ = ReturnSetDesc{std::move(sys), std::move(x), std::move(u)};
  return s;
}

SetDescriptor SetDescriptor::union_of(std::vector<SetDescriptor> parts) {
  if (parts.empty()) throw std::invalid_argument("union of zero descriptors");
  SetDescriptor s;
  s.v_ = UnionDesc{std::move(parts)};
  return s;
}

SetDescriptor SetDescriptor::intersection_of(std::vector<SetDescriptor> parts) {
  if (parts.empty()) throw std::invalid_argument("intersection of zero descriptors");
  SetDescriptor s;
  s.v_ = IntersectionDesc{std::move(parts)};
  return s;
}

namespace {

IntegerWindow eval_ap(const ApDesc& ap, std::int64_t lo, std::int64_t hi) {
  std::int64_t span = checked_add(checked_sub(hi, lo), 1);
  if (span / ap.modulus + 1 > (std::int64_t{1} << 26))
    throw budget_error("arithmetic progression would exceed the member budget");
  std::vector<std::int64_t> members;
  std::int64_t r = mod_floor(ap.residue, ap.modulus);
  std::int64_t first = checked_add(lo, mod_floor(r - lo, ap.modulus));
  for (std::int64_t m = first; m <= hi; m += ap.modulus) members.push_back(m);
  return IntegerWindow::from_sorted(lo, hi, std::move(members));
}

}  // namespace

IntegerWindow eval_window(const SetDescriptor& s, std::int64_t lo, std::int64_t hi,
                          int threads) {
  if (lo > hi) throw std::invalid_argument("eval_window: lo > hi");
  return std::visit(
      [&](const auto& d) -> IntegerWindow {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitSetDesc>) {
          return d.window.restricted(lo, hi);
        } else if constexpr (std::is_same_v<T, FsDesc>) {
          return generate_fs(d.p).restricted(lo, hi);
        } else if constexpr (std::is_same_v<T, SgDesc>) {
          return generate_sg(d.p, d.d).restricted(lo, hi);
        } else if constexpr (std::is_same_v<T, DeltaDesc>) {
          IntegerWindow source = eval_window(*d.inner, d.source_lo, d.source_hi, threads);
          return delta_set(source).restricted(lo, hi);
        } else if constexpr (std::is_same_v<T, ApDesc>) {
          return eval_ap(d, lo, hi);
        } else if constexpr (std::is_same_v<T, ReturnSetDesc>) {
          return return_set(d.sys, d.x, d.u, lo, hi, threads).definite;
        } else if constexpr (std::is_same_v<T, UnionDesc>) {
          std::vector<IntegerWindow> parts;
          parts.reserve(d.parts.size());
          for (const auto& p : d.parts) parts.push_back(eval_window(p, lo, hi, threads));
          return window_union(parts, lo, hi);
        } else {
          std::vector<IntegerWindow> parts;
          parts.reserve(d.parts.size());
          for (const auto& p : d.parts) parts.push_back(eval_window(p, lo, hi, threads));
          return window_intersection(parts, lo, hi);
        }
      },
      s.v());
}

}  // namespace reclab
