#pragma once

#include <memory>

#include "reclab/returnset.hpp"
#include "reclab/sequence.hpp"
#include "reclab/setgen.hpp"
#include "reclab/system.hpp"
#include "reclab/window.hpp"

namespace reclab {

class SetDescriptor;

struct ExplicitSetDesc {
  IntegerWindow window;
};
struct FsDesc {
  SequenceSpec p;
};
struct SgDesc {
  SequenceSpec p;
  int d;
};
// Difference set of the inner descriptor evaluated over a fixed source
// window. The source window is part of the description: without it the
// result could not be window-monotone.
struct DeltaDesc {
  std::shared_ptr<SetDescriptor> inner;
  std::int64_t source_lo;
  std::int64_t source_hi;
};
struct ApDesc {
  std::int64_t modulus;  // >= 1
  std::int64_t residue;
};
struct ReturnSetDesc {  // guard-band boundary indices are not members
  SystemSpec sys;
  SystemPoint x;
  Neighborhood u;
};
struct UnionDesc {
  std::vector<SetDescriptor> parts;
};
struct IntersectionDesc {
  std::vector<SetDescriptor> parts;
};

class SetDescriptor {
 public:
  using Variant = std::variant<ExplicitSetDesc, FsDesc, SgDesc, DeltaDesc, ApDesc,
                               ReturnSetDesc, UnionDesc, IntersectionDesc>;

  static SetDescriptor explicit_set(IntegerWindow w);
  static SetDescriptor fs(SequenceSpec p);
  static SetDescriptor sg(SequenceSpec p, int d);
  static SetDescriptor delta(SetDescriptor inner, std::int64_t source_lo,
                             std::int64_t source_hi);
  static SetDescriptor ap(std::int64_t modulus, std::int64_t residue);
  static SetDescriptor return_set_of(SystemSpec sys, SystemPoint x, Neighborhood u);
  static SetDescriptor union_of(std::vector<SetDescriptor> parts);
  static SetDescriptor intersection_of(std::vector<SetDescriptor> parts);

  const Variant& v() const { return v_; }

 private:
  Variant v_;
};

// Exactly the members of the described set within [lo, hi]. FS/SG sets are
// generated from the full finite P and then restricted, so enlarging the
// window and restricting back is the identity.
IntegerWindow eval_window(const SetDescriptor& s, std::int64_t lo, std::int64_t hi,
                          int threads = 1);

}  // namespace reclab
