#include "reclab/system.hpp"

#include <numeric>
#include <stdexcept>

#include "reclab/checked.hpp"
#include "reclab/errors.hpp"

namespace reclab {

namespace {
constexpr std::int64_t kMaxCyclicModulus = std::int64_t{1} << 31;
constexpr int kMaxWeylDepth = 16;
}  // namespace

bool CyclicSpec::minimal() const {
  return std::gcd(mod_floor(step, modulus), modulus) == 1;
}

SystemSpec SystemSpec::rotation(TorusScalar alpha) {
  SystemSpec s;
  s.v_ = RotationSpec{std::move(alpha)};
  return s;
}

SystemSpec SystemSpec::weyl_affine(int depth, TorusScalar alpha) {
  if (depth < 1 || depth > kMaxWeylDepth)
    throw std::invalid_argument("weyl_affine: depth out of range");
  SystemSpec s;
  s.v_ = WeylAffineSpec{depth, std::move(alpha)};
  return s;
}

SystemSpec SystemSpec::cyclic(std::int64_t modulus, std::int64_t step) {
  if (modulus < 1 || modulus > kMaxCyclicModulus)
    throw std::invalid_argument("cyclic: modulus out of range");
  SystemSpec s;
  s.v_ = CyclicSpec{modulus, step};
  return s;
}

SystemSpec SystemSpec::sturmian(TorusScalar alpha, TorusScalar base) {
  if (!alpha.irrational_flagged())
    throw std::invalid_argument("sturmian: alpha must be a continued-fraction target");
  SystemSpec s;
  s.v_ = SturmianSpec{std::move(alpha), std::move(base)};
  return s;
}

SystemSpec SystemSpec::product(std::vector<SystemSpec> parts) {
  if (parts.empty()) throw std::invalid_argument("product of zero systems");
  SystemSpec s;
  s.v_ = ProductSpec{std::move(parts)};
  return s;
}

SystemPoint SystemPoint::torus(std::vector<TorusScalar> coords) {
  SystemPoint p;
  p.v_ = std::move(coords);
  return p;
}

SystemPoint SystemPoint::residue(std::int64_t r) {
  SystemPoint p;
  p.v_ = r;
  return p;
}

SystemPoint SystemPoint::tuple(std::vector<SystemPoint> parts) {
  SystemPoint p;
  p.v_ = std::move(parts);
  return p;
}

const std::vector<TorusScalar>& SystemPoint::coords() const {
  if (!is_torus()) throw std::logic_error("not a torus point");
  return std::get<std::vector<TorusScalar>>(v_);
}

std::int64_t SystemPoint::residue_value() const {
  if (!is_residue()) throw std::logic_error("not a residue point");
  return std::get<std::int64_t>(v_);
}

const std::vector<SystemPoint>& SystemPoint::parts() const {
  if (!is_tuple()) throw std::logic_error("not a tuple point");
  return std::get<std::vector<SystemPoint>>(v_);
}

bool SystemPoint::operator==(const SystemPoint& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (is_residue()) return residue_value() == o.residue_value();
  if (is_torus()) return coords() == o.coords();
  return parts() == o.parts();
}

Neighborhood Neighborhood::ball(SystemPoint center, Rat eps) {
  if (eps <= 0 || eps > Rat(1, 2))
    throw std::invalid_argument("ball eps must lie in (0, 1/2]");
  Neighborhood n;
  n.v_ = BallNbhd{std::move(center), std::move(eps)};
  return n;
}

Neighborhood Neighborhood::cylinder(SystemPoint center, std::int64_t radius) {
  if (radius < 0) throw std::invalid_argument("cylinder radius must be >= 0");
  Neighborhood n;
  n.v_ = CylinderNbhd{std::move(center), radius};
  return n;
}

Neighborhood Neighborhood::subset(std::vector<std::int64_t> residues) {
  for (std::size_t i = 1; i < residues.size(); ++i)
    if (residues[i] <= residues[i - 1])
      throw std::invalid_argument("subset residues must be strictly ascending");
  Neighborhood n;
  n.v_ = SubsetNbhd{std::move(residues)};
  return n;
}

void validate_point(const SystemSpec& sys, const SystemPoint& x) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RotationSpec>) {
          if (!x.is_torus() || x.coords().size() != 1)
            throw std::invalid_argument("rotation point needs one torus coordinate");
        } else if constexpr (std::is_same_v<T, WeylAffineSpec>) {
          if (!x.is_torus() || x.coords().size() != static_cast<std::size_t>(s.depth))
            throw std::invalid_argument("weyl point arity mismatch");
        } else if constexpr (std::is_same_v<T, CyclicSpec>) {
          if (!x.is_residue() || x.residue_value() < 0 || x.residue_value() >= s.modulus)
            throw std::invalid_argument("cyclic point must be a residue in [0, N)");
        } else if constexpr (std::is_same_v<T, SturmianSpec>) {
          if (!x.is_torus() || x.coords().size() != 1)
            throw std::invalid_argument("sturmian point needs one torus coordinate");
        } else {
          if (!x.is_tuple() || x.parts().size() != s.parts.size())
            throw std::invalid_argument("product point arity mismatch");
          for (std::size_t i = 0; i < s.parts.size(); ++i)
            validate_point(s.parts[i], x.parts()[i]);
        }
      },
      sys.v());
}

i128 binom_i128(std::int64_t n, unsigned k) {
  i128 r = 1;
  for (unsigned i = 0; i < k; ++i) {
    i128 factor = static_cast<i128>(n) - static_cast<i128>(i);
    i128 prod;
    if (__builtin_mul_overflow(r, factor, &prod))
      throw precision_error("binomial coefficient exceeds 128 bits");
    r = prod / static_cast<i128>(i + 1);  // exact at every step
  }
  return r;
}

namespace detail {

// One Weyl/rotation coordinate of T^n x: sum_{i<=j} C(n, j-i) x_i + C(n,j) a.
TorusScalar weyl_coordinate(const std::vector<TorusScalar>& x0,
                            const TorusScalar& alpha, std::int64_t n, int j) {
  bool all_rational = alpha.is_rational();
  for (int i = 0; i < j && all_rational; ++i)
    all_rational = x0[static_cast<std::size_t>(i)].is_rational();
  if (all_rational) {
    Rat acc = Rat(binom(BigInt(static_cast<long>(n)), static_cast<unsigned>(j))) *
              alpha.rat();
    for (int i = 1; i <= j; ++i)
      acc += Rat(binom(BigInt(static_cast<long>(n)), static_cast<unsigned>(j - i))) *
             x0[static_cast<std::size_t>(i - 1)].rat();
    return TorusScalar::rational(mod1(acc));
  }
  Fixed128 acc = alpha.to_fixed().mul_int(binom_i128(n, static_cast<unsigned>(j)));
  for (int i = 1; i <= j; ++i) {
    i128 c = binom_i128(n, static_cast<unsigned>(j - i));
    acc = acc.add(x0[static_cast<std::size_t>(i - 1)].to_fixed().mul_int(c));
  }
  return TorusScalar::from_fixed(acc);
}

}  // namespace detail

SystemPoint orbit_point(const SystemSpec& sys, const SystemPoint& x, std::int64_t n) {
  validate_point(sys, x);
  return std::visit(
      [&](const auto& s) -> SystemPoint {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RotationSpec>) {
          return SystemPoint::torus({detail::weyl_coordinate(x.coords(), s.alpha, n, 1)});
        } else if constexpr (std::is_same_v<T, WeylAffineSpec>) {
          std::vector<TorusScalar> out;
          out.reserve(static_cast<std::size_t>(s.depth));
          for (int j = 1; j <= s.depth; ++j)
            out.push_back(detail::weyl_coordinate(x.coords(), s.alpha, n, j));
          return SystemPoint::torus(std::move(out));
        } else if constexpr (std::is_same_v<T, CyclicSpec>) {
          std::int64_t nm = mod_floor(n, s.modulus);
          std::int64_t km = mod_floor(s.step, s.modulus);
          std::int64_t shift = (nm * km) % s.modulus;
          return SystemPoint::residue((x.residue_value() + shift) % s.modulus);
        } else if constexpr (std::is_same_v<T, SturmianSpec>) {
          return SystemPoint::torus({detail::weyl_coordinate(x.coords(), s.alpha, n, 1)});
        } else {
          std::vector<SystemPoint> out;
          out.reserve(s.parts.size());
          for (std::size_t i = 0; i < s.parts.size(); ++i)
            out.push_back(orbit_point(s.parts[i], x.parts()[i], n));
          return SystemPoint::tuple(std::move(out));
        }
      },
      sys.v());
}

namespace {

GuardedDist dist_max(GuardedDist acc, const GuardedDist& d) {
  if (acc.exact && d.exact) {
    if (*d.exact > *acc.exact) acc.exact = d.exact;
    return acc;
  }
  // Promote to guarded intervals; max of centers with max of errors is sound.
  auto widen = [](const GuardedDist& g) -> std::pair<u128, u128> {
    if (!g.exact) return {g.ulps, g.err};
    Fixed128 f = Fixed128::from_rat(*g.exact);
    return {f.value, f.err};
  };
  auto [av, ae] = widen(acc);
  auto [bv, be] = widen(d);
  GuardedDist out;
  out.ulps = std::max(av, bv);
  out.err = std::max(ae, be);
  return out;
}

void collect_distance(const SystemSpec& sys, const SystemPoint& a,
                      const SystemPoint& b, GuardedDist& acc) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RotationSpec> || std::is_same_v<T, WeylAffineSpec>) {
          for (std::size_t i = 0; i < a.coords().size(); ++i)
            acc = dist_max(acc, scalar_dist(a.coords()[i], b.coords()[i]));
        } else if constexpr (std::is_same_v<T, CyclicSpec>) {
          GuardedDist d;
          d.exact = torus_dist_rat(make_rat(a.residue_value(), s.modulus),
                                   make_rat(b.residue_value(), s.modulus));
          acc = dist_max(acc, d);
        } else if constexpr (std::is_same_v<T, SturmianSpec>) {
          throw std::invalid_argument("torus distance undefined on sturmian systems");
        } else {
          for (std::size_t i = 0; i < s.parts.size(); ++i)
            collect_distance(s.parts[i], a.parts()[i], b.parts()[i], acc);
        }
      },
      sys.v());
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Out || b == Verdict::Out) return Verdict::Out;
  if (a == Verdict::Boundary || b == Verdict::Boundary) return Verdict::Boundary;
  return Verdict::In;
}

Verdict ball_verdict(const SystemSpec& sys, const SystemPoint& p,
                     const SystemPoint& center, const EpsUlps& eps) {
  Verdict v = Verdict::In;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RotationSpec> || std::is_same_v<T, WeylAffineSpec>) {
          for (std::size_t i = 0; i < p.coords().size(); ++i)
            v = combine(v, scalar_dist(p.coords()[i], center.coords()[i]).less_than(eps));
        } else if constexpr (std::is_same_v<T, CyclicSpec>) {
          Rat d = torus_dist_rat(make_rat(p.residue_value(), s.modulus),
                                 make_rat(center.residue_value(), s.modulus));
          v = combine(v, d < eps.eps ? Verdict::In : Verdict::Out);
        } else if constexpr (std::is_same_v<T, SturmianSpec>) {
          throw std::invalid_argument("ball neighborhoods undefined on sturmian systems");
        } else {
          for (std::size_t i = 0; i < s.parts.size(); ++i)
            v = combine(v, ball_verdict(s.parts[i], p.parts()[i],
                                        center.parts()[i], eps));
        }
      },
      sys.v());
  return v;
}

}  // namespace

GuardedDist torus_distance(const SystemSpec& sys, const SystemPoint& a,
                           const SystemPoint& b) {
  validate_point(sys, a);
  validate_point(sys, b);
  GuardedDist acc;
  acc.exact = Rat(0);
  collect_distance(sys, a, b, acc);
  return acc;
}

Verdict sturmian_symbol(const SturmianSpec& sys, const TorusScalar& pos, std::int64_t m) {
  // pos + m*alpha in [1-alpha, 1)  <=>  pos + (m+1)*alpha wraps past 1, i.e.
  // value + (m+1)*alpha < alpha in wrapping arithmetic. Compare directly with
  // the guard band instead: v >= 1 - alpha.
  Fixed128 a = sys.alpha.to_fixed();
  Fixed128 v = pos.to_fixed().add(a.mul_int(m));
  Fixed128 boundary{u128{0} - a.value, a.err};  // 1 - alpha mod 1
  u128 margin = torus_dist_ulps(v.value, boundary.value);
  u128 err = sat_add(v.err, boundary.err);
  if (margin <= err) return Verdict::Boundary;
  // Also guard the wrap point at 0 (the other endpoint of the cell).
  u128 margin0 = torus_dist_ulps(v.value, 0);
  if (margin0 <= err) return Verdict::Boundary;
  return v.value >= boundary.value ? Verdict::In : Verdict::Out;
}

Verdict neighborhood_verdict(const SystemSpec& sys, const Neighborhood& u,
                             const SystemPoint& p) {
  validate_point(sys, p);
  return std::visit(
      [&](const auto& nb) -> Verdict {
        using T = std::decay_t<decltype(nb)>;
        if constexpr (std::is_same_v<T, BallNbhd>) {
          validate_point(sys, nb.center);
          return ball_verdict(sys, p, nb.center, eps_to_ulps(nb.eps));
        } else if constexpr (std::is_same_v<T, SubsetNbhd>) {
          const auto* c = std::get_if<CyclicSpec>(&sys.v());
          if (!c) throw std::invalid_argument("subset neighborhoods need a cyclic system");
          return std::binary_search(nb.residues.begin(), nb.residues.end(),
                                    p.residue_value())
                     ? Verdict::In
                     : Verdict::Out;
        } else {
          const auto* st = std::get_if<SturmianSpec>(&sys.v());
          if (!st) throw std::invalid_argument("cylinder neighborhoods need a sturmian system");
          validate_point(sys, nb.center);
          Verdict v = Verdict::In;
          for (std::int64_t m = -nb.radius; m <= nb.radius; ++m) {
            Verdict sp = sturmian_symbol(*st, p.coords()[0], m);
            Verdict sc = sturmian_symbol(*st, nb.center.coords()[0], m);
            if (sp == Verdict::Boundary || sc == Verdict::Boundary)
              v = combine(v, Verdict::Boundary);
            else
              v = combine(v, sp == sc ? Verdict::In : Verdict::Out);
          }
          return v;
        }
      },
      u.v());
}

}  // namespace reclab
