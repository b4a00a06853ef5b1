#include "reclab/torus.hpp"

#include <stdexcept>

namespace reclab {

TorusScalar TorusScalar::rational(const Rat& q) {
  TorusScalar t;
  t.v_ = mod1(q);
  return t;
}

TorusScalar TorusScalar::from_cf(const ContinuedFraction& cf) {
  TorusScalar t;
  t.v_ = cf_to_fixed(cf);
  t.irrational_ = true;
  t.cf_ = cf;
  return t;
}

TorusScalar TorusScalar::from_fixed(const Fixed128& f) {
  TorusScalar t;
  t.v_ = f;
  return t;
}

const Rat& TorusScalar::rat() const {
  if (!is_rational()) throw std::logic_error("not a rational torus scalar");
  return std::get<Rat>(v_);
}

const Fixed128& TorusScalar::fixed_raw() const {
  if (is_rational()) throw std::logic_error("not a fixed torus scalar");
  return std::get<Fixed128>(v_);
}

Fixed128 TorusScalar::to_fixed() const {
  if (is_rational()) return Fixed128::from_rat(std::get<Rat>(v_));
  return std::get<Fixed128>(v_);
}

std::string TorusScalar::str() const {
  if (is_rational()) return rat_str(std::get<Rat>(v_));
  if (cf_) return "cf:" + cf_str(*cf_);
  return "fixed:" + u128_hex(std::get<Fixed128>(v_).value);
}

bool TorusScalar::operator==(const TorusScalar& o) const {
  if (is_rational() && o.is_rational()) return rat() == o.rat();
  if (is_rational() != o.is_rational()) return false;
  // Guarded values are equal as points only when both are error-free.
  const auto& a = fixed_raw();
  const auto& b = o.fixed_raw();
  return a.err == 0 && b.err == 0 && a.value == b.value;
}

Verdict GuardedDist::less_than(const EpsUlps& eps) const {
  if (exact) return *exact < eps.eps ? Verdict::In : Verdict::Out;
  return dist_verdict(ulps, err, eps);
}

GuardedDist scalar_dist(const TorusScalar& a, const TorusScalar& b) {
  if (a.is_rational() && b.is_rational()) {
    GuardedDist d;
    d.exact = torus_dist_rat(a.rat(), b.rat());
    return d;
  }
  Fixed128 fa = a.to_fixed();
  Fixed128 fb = b.to_fixed();
  GuardedDist d;
  d.ulps = torus_dist_ulps(fa.value, fb.value);
  d.err = sat_add(fa.err, fb.err);
  return d;
}

}  // namespace reclab
