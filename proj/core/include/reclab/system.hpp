#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "reclab/torus.hpp"

namespace reclab {

class SystemSpec;
class SystemPoint;

struct RotationSpec {  // x -> x + alpha on the circle
  TorusScalar alpha;
};

// (t_1, ..., t_depth) -> (t_1 + alpha, t_2 + t_1, ..., t_depth + t_{depth-1});
// the affine model whose origin orbit satisfies t_j(n) = C(n, j) * alpha.
struct WeylAffineSpec {
  int depth;
  TorusScalar alpha;
};

struct CyclicSpec {  // n -> n + step on Z/modulus
  std::int64_t modulus;
  std::int64_t step;
  bool minimal() const;  // gcd(step, modulus) == 1
};

// {0,1} coding of base under rotation by alpha, partition [0,1-a) / [1-a,1).
// alpha must be irrational-flagged (a continued-fraction target).
struct SturmianSpec {
  TorusScalar alpha;
  TorusScalar base;
};

struct ProductSpec {
  std::vector<SystemSpec> parts;
};

class SystemSpec {
 public:
  using Variant = std::variant<RotationSpec, WeylAffineSpec, CyclicSpec,
                               SturmianSpec, ProductSpec>;

  static SystemSpec rotation(TorusScalar alpha);
  static SystemSpec weyl_affine(int depth, TorusScalar alpha);
  static SystemSpec cyclic(std::int64_t modulus, std::int64_t step);
  static SystemSpec sturmian(TorusScalar alpha, TorusScalar base);
  static SystemSpec product(std::vector<SystemSpec> parts);

  const Variant& v() const { return v_; }

 private:
  Variant v_;
};

class SystemPoint {
 public:
  using Variant = std::variant<std::vector<TorusScalar>, std::int64_t,
                               std::vector<SystemPoint>>;

  SystemPoint() : v_(std::vector<TorusScalar>{}) {}

  static SystemPoint torus(std::vector<TorusScalar> coords);
  static SystemPoint residue(std::int64_t r);
  static SystemPoint tuple(std::vector<SystemPoint> parts);

  bool is_torus() const { return std::holds_alternative<std::vector<TorusScalar>>(v_); }
  bool is_residue() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_tuple() const { return std::holds_alternative<std::vector<SystemPoint>>(v_); }

  const std::vector<TorusScalar>& coords() const;
  std::int64_t residue_value() const;
  const std::vector<SystemPoint>& parts() const;

  bool operator==(const SystemPoint& o) const;

 private:
  Variant v_;
};

struct BallNbhd {  // open ball in the max-over-coordinates torus metric
  SystemPoint center;
  Rat eps;  // in (0, 1/2]
};

struct CylinderNbhd {  // Sturmian codings agree on coordinates [-radius, radius]
  SystemPoint center;
  std::int64_t radius;  // >= 0
};

struct SubsetNbhd {  // explicit residue set, cyclic systems only
  std::vector<std::int64_t> residues;  // sorted ascending
};

class Neighborhood {
 public:
  using Variant = std::variant<BallNbhd, CylinderNbhd, SubsetNbhd>;

  static Neighborhood ball(SystemPoint center, Rat eps);
  static Neighborhood cylinder(SystemPoint center, std::int64_t radius);
  static Neighborhood subset(std::vector<std::int64_t> residues);

  const Variant& v() const { return v_; }

 private:
  Variant v_;
};

// Throws std::invalid_argument when the point's shape does not match.
void validate_point(const SystemSpec& sys, const SystemPoint& x);

// T^n x, exact for rational data; guarded fixed-point otherwise. Weyl
// coordinates use the binomial closed form rather than n-fold iteration.
SystemPoint orbit_point(const SystemSpec& sys, const SystemPoint& x, std::int64_t n);

// Max over scalar coordinates of the distance to the nearest integer.
// Undefined (throws) for systems with a Sturmian component.
GuardedDist torus_distance(const SystemSpec& sys, const SystemPoint& a,
                           const SystemPoint& b);

// Is T^n x inside u? Boundary only ever arises on the guarded path.
Verdict neighborhood_verdict(const SystemSpec& sys, const Neighborhood& u,
                             const SystemPoint& p);

// C(n, k) in signed 128-bit arithmetic; throws precision_error on overflow
// (the guarded path cannot track errors that large anyway).
i128 binom_i128(std::int64_t n, unsigned k);

// Sturmian symbol of the rotation point pos at time m (1 iff the orbit lands
// in [1-alpha, 1)); Boundary when the guard band straddles the partition.
Verdict sturmian_symbol(const SturmianSpec& sys, const TorusScalar& pos, std::int64_t m);

namespace detail {
// One Weyl/rotation coordinate of T^n x: sum_{i<=j} C(n, j-i) x_i + C(n,j) a.
TorusScalar weyl_coordinate(const std::vector<TorusScalar>& x0,
                            const TorusScalar& alpha, std::int64_t n, int j);
}  // namespace detail

}  // namespace reclab
