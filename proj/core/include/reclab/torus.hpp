#pragma once

#include <optional>
#include <variant>

#include "reclab/contfrac.hpp"
#include "reclab/fixed128.hpp"
#include "reclab/rat.hpp"

namespace reclab {

// A point of R/Z: exact rational, or a guarded 128-bit fixed-point value
// built from a continued-fraction target (the only way irrationals enter).
class TorusScalar {
 public:
  TorusScalar() : v_(Rat(0)) {}

  static TorusScalar rational(const Rat& q);
  static TorusScalar from_cf(const ContinuedFraction& cf);
  static TorusScalar from_fixed(const Fixed128& f);  // guarded intermediate values

  bool is_rational() const { return std::holds_alternative<Rat>(v_); }
  bool irrational_flagged() const { return irrational_; }

  const Rat& rat() const;        // requires is_rational()
  const Fixed128& fixed_raw() const;  // requires !is_rational()
  Fixed128 to_fixed() const;     // promotes rationals exactly (err <= 1 ulp)

  // Source continued fraction when built from one (kept for serialization).
  const std::optional<ContinuedFraction>& cf() const { return cf_; }

  std::string str() const;

  bool operator==(const TorusScalar& o) const;

 private:
  std::variant<Rat, Fixed128> v_;
  bool irrational_ = false;
  std::optional<ContinuedFraction> cf_;
};

// Distance carrying either an exact rational or a guarded ulps interval.
struct GuardedDist {
  std::optional<Rat> exact;
  u128 ulps = 0;
  u128 err = 0;

  Verdict less_than(const EpsUlps& eps) const;
};

GuardedDist scalar_dist(const TorusScalar& a, const TorusScalar& b);

}  // namespace reclab
