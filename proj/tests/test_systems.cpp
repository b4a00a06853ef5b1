#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "reclab/checked.hpp"
#include "reclab/errors.hpp"
#include "reclab/measure.hpp"
#include "reclab/returnset.hpp"

using namespace reclab;

namespace {

TorusScalar rat(std::int64_t n, std::int64_t d) {
  return TorusScalar::rational(make_rat(n, d));
}

SystemPoint pt(std::vector<TorusScalar> c) { return SystemPoint::torus(std::move(c)); }

TorusScalar golden() { return TorusScalar::from_cf(parse_cf("golden")); }
TorusScalar sqrt2m1() { return TorusScalar::from_cf(parse_cf("sqrt2m1")); }

}  // namespace

TEST_CASE("orbit_point examples") {
  auto rot = SystemSpec::rotation(rat(1, 4));
  auto p = orbit_point(rot, pt({rat(0, 1)}), 3);
  CHECK(p.coords()[0].rat() == Rat(3, 4));

  auto weyl = SystemSpec::weyl_affine(2, rat(1, 4));
  auto q = orbit_point(weyl, pt({rat(0, 1), rat(0, 1)}), 4);
  CHECK(q.coords()[0].rat() == Rat(0));
  CHECK(q.coords()[1].rat() == Rat(1, 2));

  auto cyc = SystemSpec::cyclic(10, 3);
  CHECK(orbit_point(cyc, SystemPoint::residue(4), 5).residue_value() == 9);
  CHECK(orbit_point(cyc, SystemPoint::residue(4), -1).residue_value() == 1);
}

TEST_CASE("weyl origin orbit is the binomial multiple of alpha") {
  auto weyl = SystemSpec::weyl_affine(3, rat(2, 7));
  for (std::int64_t n : {-9, -3, 0, 1, 5, 12, 40}) {
    auto p = orbit_point(weyl, pt({rat(0, 1), rat(0, 1), rat(0, 1)}), n);
    for (int j = 1; j <= 3; ++j) {
      Rat expect = mod1(Rat(binom(BigInt(static_cast<long>(n)), static_cast<unsigned>(j))) *
                        Rat(2, 7));
      CHECK(p.coords()[static_cast<std::size_t>(j - 1)].rat() == expect);
    }
  }
}

TEST_CASE("weyl closed form equals one-step iteration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> num(0, 30);
  std::uniform_int_distribution<std::int64_t> den(1, 30);
  std::uniform_int_distribution<std::int64_t> steps(-1000, 1000);
  for (int iter = 0; iter < 20; ++iter) {
    Rat alpha = mod1(make_rat(num(rng), den(rng)));
    std::vector<Rat> x0{mod1(make_rat(num(rng), den(rng))),
                        mod1(make_rat(num(rng), den(rng))),
                        mod1(make_rat(num(rng), den(rng)))};
    std::int64_t n = steps(rng);
    auto sys = SystemSpec::weyl_affine(3, TorusScalar::rational(alpha));
    auto p = orbit_point(sys,
                         pt({TorusScalar::rational(x0[0]), TorusScalar::rational(x0[1]),
                             TorusScalar::rational(x0[2])}),
                         n);
    auto iterated = oracle::weyl_iterate(3, alpha, x0, n);
    for (int j = 0; j < 3; ++j)
      CHECK(p.coords()[static_cast<std::size_t>(j)].rat() ==
            iterated[static_cast<std::size_t>(j)]);
  }
}

TEST_CASE("torus_distance examples") {
  auto rot = SystemSpec::rotation(rat(1, 4));
  auto d = torus_distance(rot, pt({rat(1, 10)}), pt({rat(9, 10)}));
  CHECK(*d.exact == Rat(1, 5));
  CHECK(*torus_distance(rot, pt({rat(3, 7)}), pt({rat(3, 7)})).exact == Rat(0));

  auto weyl = SystemSpec::weyl_affine(2, rat(1, 4));
  auto d2 = torus_distance(weyl, pt({rat(0, 1), rat(1, 4)}), pt({rat(1, 2), rat(3, 4)}));
  CHECK(*d2.exact == Rat(1, 2));
}

TEST_CASE("return_set: exact rational rotation") {
  auto rot = SystemSpec::rotation(rat(2, 5));
  auto origin = pt({rat(0, 1)});
  auto rs = return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)), -20, 20);
  CHECK(rs.boundary.empty());
  CHECK(rs.definite.members() ==
        std::vector<std::int64_t>{-20, -15, -10, -5, 0, 5, 10, 15, 20});

  auto all = return_set(rot, origin, Neighborhood::ball(origin, make_rat(1, 2)), -7, 7);
  CHECK(all.definite.size() == 15);  // distances are 0, 1/5, 2/5, all < 1/2
}

TEST_CASE("return_set: eps = 1/2 with an exactly antipodal orbit point") {
  // distance can reach exactly 1/2; the open ball excludes it
  auto rot = SystemSpec::rotation(rat(1, 2));
  auto origin = pt({rat(0, 1)});
  auto rs = return_set(rot, origin, Neighborhood::ball(origin, make_rat(1, 2)), 0, 9);
  CHECK(rs.definite.members() == std::vector<std::int64_t>{0, 2, 4, 6, 8});
}

TEST_CASE("return_set: rational rotations return exactly qZ for eps < 1/q") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<std::int64_t> qd(2, 50);
  for (int iter = 0; iter < 25; ++iter) {
    std::int64_t q = qd(rng);
    std::uniform_int_distribution<std::int64_t> pd(1, q - 1);
    std::int64_t p = pd(rng);
    if (std::gcd(p, q) != 1) continue;
    Rat eps = Rat(1, static_cast<long>(q + 1 + (iter % 3)));
    auto rot = SystemSpec::rotation(TorusScalar::rational(make_rat(p, q)));
    auto origin = pt({rat(0, 1)});
    auto rs = return_set(rot, origin, Neighborhood::ball(origin, eps), -200, 200);
    for (std::int64_t n = -200; n <= 200; ++n)
      CHECK(rs.definite.contains(n) == (n % q == 0));
  }
}

TEST_CASE("return_set: Weyl nil-2 generator at the origin") {
  auto weyl = SystemSpec::weyl_affine(2, rat(1, 4));
  auto origin = pt({rat(0, 1), rat(0, 1)});
  auto rs = return_set(weyl, origin, Neighborhood::ball(origin, make_rat(1, 10)), 0, 100);
  std::vector<std::int64_t> want;
  for (std::int64_t n = 0; n <= 100; n += 8) want.push_back(n);
  CHECK(rs.definite.members() == want);

  // cross-check against the exact one-step oracle
  auto direct = oracle::weyl_return_direct(2, Rat(1, 4), {Rat(0), Rat(0)},
                                           {Rat(0), Rat(0)}, Rat(1, 10), 0, 100);
  CHECK(rs.definite.members() == direct);
}

TEST_CASE("return_set: cyclic subsets") {
  auto cyc = SystemSpec::cyclic(8, 1);
  auto rs = return_set(cyc, SystemPoint::residue(0), Neighborhood::subset({0}), 1, 100);
  std::vector<std::int64_t> want;
  for (std::int64_t n = 8; n <= 100; n += 8) want.push_back(n);
  CHECK(rs.definite.members() == want);
}

TEST_CASE("cyclic return sets match brute force for all N <= 64") {
  std::mt19937_64 rng(77);
  for (std::int64_t n_mod = 1; n_mod <= 64; ++n_mod) {
    std::uniform_int_distribution<std::int64_t> kd(-n_mod, n_mod);
    std::uniform_int_distribution<std::int64_t> rd(0, n_mod - 1);
    std::int64_t k = kd(rng);
    auto cyc = SystemSpec::cyclic(n_mod, k);
    std::set<std::int64_t> subset;
    for (int i = 0; i < 3; ++i) subset.insert(rd(rng));
    std::vector<std::int64_t> residues(subset.begin(), subset.end());
    std::int64_t x0 = rd(rng);
    auto rs = return_set(cyc, SystemPoint::residue(x0),
                         Neighborhood::subset(residues), -50, 50);
    for (std::int64_t n = -50; n <= 50; ++n) {
      std::int64_t r = mod_floor(x0 + mod_floor(n, n_mod) * mod_floor(k, n_mod), n_mod);
      CHECK(rs.definite.contains(n) == subset.contains(r));
    }
  }
}

TEST_CASE("return_set symmetry around the origin") {
  auto check_symmetric = [](const SystemSpec& sys, const SystemPoint& x, const Rat& eps,
                            std::int64_t w) {
    auto rs = return_set(sys, x, Neighborhood::ball(x, eps), -w, w);
    REQUIRE(rs.boundary.empty());
    for (std::int64_t n : rs.definite.members()) CHECK(rs.definite.contains(-n));
  };
  check_symmetric(SystemSpec::rotation(rat(3, 7)), pt({rat(2, 7)}), Rat(1, 5), 300);
  check_symmetric(SystemSpec::rotation(golden()), pt({rat(0, 1)}), Rat(3, 20), 300);
  check_symmetric(SystemSpec::weyl_affine(2, rat(1, 4)), pt({rat(0, 1), rat(0, 1)}),
                  Rat(1, 10), 500);
}

TEST_CASE("guarded scan agrees with exact high-precision recomputation") {
  auto rot = SystemSpec::rotation(golden());
  auto origin = pt({rat(0, 1)});
  auto rs = return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)), 1, 2000);
  CHECK(rs.boundary.empty());
  Rat alpha = oracle::golden_fibonacci(400);
  auto direct = oracle::rotation_return_direct(alpha, Rat(0), Rat(0), Rat(3, 20), 1, 2000);
  CHECK(rs.definite.members() == direct);
  // the first few golden return times at this scale
  CHECK(rs.definite.contains(3));
  CHECK(rs.definite.contains(5));
  CHECK(rs.definite.contains(8));
  CHECK(rs.definite.contains(13));
  CHECK_FALSE(rs.definite.contains(4));
}

TEST_CASE("guarded scan agrees with the per-index closed-form route") {
  auto weyl = SystemSpec::weyl_affine(2, sqrt2m1());
  auto x = pt({rat(0, 1), rat(0, 1)});
  auto y = pt({rat(0, 1), rat(1, 2)});
  auto ball = Neighborhood::ball(y, make_rat(1, 10));
  auto rs = return_set(weyl, x, ball, -500, 500);
  for (std::int64_t n = -500; n <= 500; ++n) {
    Verdict v = membership_verdict(weyl, x, ball, n);
    if (v == Verdict::In) CHECK(rs.definite.contains(n));
    if (v == Verdict::Out) CHECK_FALSE(rs.definite.contains(n));
  }
}

TEST_CASE("product of rotations intersects the coordinate conditions") {
  auto prod = SystemSpec::product(
      {SystemSpec::rotation(rat(1, 3)), SystemSpec::rotation(rat(1, 4))});
  auto origin = SystemPoint::tuple({pt({rat(0, 1)}), pt({rat(0, 1)})});
  auto rs = return_set(prod, origin, Neighborhood::ball(origin, make_rat(1, 10)), 0, 60);
  CHECK(rs.definite.members() == std::vector<std::int64_t>{0, 12, 24, 36, 48, 60});
}

TEST_CASE("precision exhaustion is an error, not a wrong answer") {
  // two partial quotients only: the error bound is far coarser than eps/4
  auto coarse = TorusScalar::from_cf(parse_cf("0;2,2"));
  auto rot = SystemSpec::rotation(coarse);
  auto origin = pt({rat(0, 1)});
  CHECK_THROWS_AS(
      return_set(rot, origin, Neighborhood::ball(origin, make_rat(1, 10)), 0, 10),
      precision_error);
}

TEST_CASE("neighborhood validation") {
  CHECK_THROWS_AS(Neighborhood::ball(pt({rat(0, 1)}), Rat(3, 4)), std::invalid_argument);
  CHECK_THROWS_AS(Neighborhood::cylinder(pt({rat(0, 1)}), -1), std::invalid_argument);
  auto rot = SystemSpec::rotation(rat(1, 3));
  CHECK_THROWS_AS(return_set(rot, pt({rat(0, 1)}), Neighborhood::subset({0}), 0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(SystemSpec::sturmian(rat(1, 3), rat(0, 1)), std::invalid_argument);
}

TEST_CASE("sturmian coding examples") {
  auto sys = SystemSpec::sturmian(golden(), rat(1, 10));
  auto code = sturmian_code(sys, 0, 4);
  CHECK(code.boundaries.empty());
  CHECK(code.symbols == "01011");

  // base deep inside [0, 1-alpha): first symbol 0
  auto sys2 = SystemSpec::sturmian(golden(), rat(1, 5));
  CHECK(sturmian_code(sys2, 0, 0).symbols == "0");

  // independent check with exact rational arithmetic at 400 bits
  Rat alpha = oracle::golden_fibonacci(400);
  auto code2 = sturmian_code(sys, 0, 200);
  REQUIRE(code2.boundaries.empty());
  for (std::int64_t n = 0; n <= 200; ++n) {
    Rat v = mod1(Rat(1, 10) + n * alpha);
    bool one = v >= 1 - alpha;
    CHECK(code2.at(n) == (one ? '1' : '0'));
  }
}

TEST_CASE("sturmian words have exactly L+1 factors of each length") {
  auto sys = SystemSpec::sturmian(golden(), rat(1, 10));
  auto code = sturmian_code(sys, 0, 2000);
  REQUIRE(code.boundaries.empty());
  for (std::size_t len = 1; len <= 8; ++len) {
    std::set<std::string> factors;
    for (std::size_t i = 0; i + len <= code.symbols.size(); ++i)
      factors.insert(code.symbols.substr(i, len));
    CHECK(factors.size() == len + 1);
  }
}

TEST_CASE("sturmian cylinder return sets") {
  auto sys = SystemSpec::sturmian(golden(), rat(1, 10));
  auto x = pt({rat(1, 10)});
  // around the point itself: n = 0 always returns
  auto rs = return_set(sys, x, Neighborhood::cylinder(x, 2), -50, 50);
  CHECK(rs.definite.contains(0));
  // agreement of codings on [-2, 2] checked directly
  auto code = sturmian_code(sys, -60, 60);
  REQUIRE(code.boundaries.empty());
  for (std::int64_t n = -50; n <= 50; ++n) {
    bool agree = true;
    for (std::int64_t m = -2; m <= 2; ++m)
      if (code.at(n + m) != code.at(m)) { agree = false; break; }
    CHECK(rs.definite.contains(n) == agree);
  }
}

TEST_CASE("measure systems: exact intersections") {
  FiniteMeasureSystem fms(8, 1);
  fms.add_set("A", std::vector<std::int64_t>{0});
  CHECK(fms.measure_intersection("A", std::vector<std::int64_t>{8, 16}) == Rat(1, 8));
  CHECK(fms.measure_intersection("A", std::vector<std::int64_t>{}) == Rat(1, 8));

  FiniteMeasureSystem half(10, 1);
  half.add_set("A", std::vector<std::int64_t>{0, 1, 2, 3, 4});
  CHECK(half.measure_intersection("A", std::vector<std::int64_t>{5}) == Rat(0));

  CHECK_THROWS_AS(half.measure_intersection("missing", std::vector<std::int64_t>{}),
                  std::invalid_argument);
}

TEST_CASE("cyclic minimality query") {
  CHECK(CyclicSpec{10, 3}.minimal());
  CHECK_FALSE(CyclicSpec{10, 4}.minimal());
  CHECK(CyclicSpec{7, -3}.minimal());
}

TEST_CASE("fixed-point constants match the published bit patterns") {
  // leading 64 bits of (sqrt(5)-1)/2 and sqrt(2)-1
  auto g = golden().to_fixed();
  CHECK(static_cast<std::uint64_t>(g.value >> 64) == 0x9E3779B97F4A7C15ull);
  CHECK(g.err <= 4);
  auto s = sqrt2m1().to_fixed();
  CHECK(static_cast<std::uint64_t>(s.value >> 64) == 0x6A09E667F3BCC908ull);
  CHECK(s.err <= 4);
}

TEST_CASE("threaded scans merge deterministically") {
  auto rot = SystemSpec::rotation(golden());
  auto origin = pt({rat(0, 1)});
  auto a = return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)), -777, 900, 1);
  auto b = return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)), -777, 900, 4);
  CHECK(a.definite == b.definite);
  CHECK(a.boundary == b.boundary);
}

TEST_CASE("binomial overflow on the guarded path is precision exhaustion") {
  auto weyl = SystemSpec::weyl_affine(12, sqrt2m1());
  std::vector<TorusScalar> zeros(12, rat(0, 1));
  CHECK_THROWS_AS(orbit_point(weyl, pt(zeros), 10000000), precision_error);
}

TEST_CASE("coarse continued fractions flag coding positions as boundaries") {
  auto coarse = TorusScalar::from_cf(parse_cf("0;1,1,1,1,1,1"));
  auto sys = SystemSpec::sturmian(coarse, rat(1, 10));
  auto code = sturmian_code(sys, 0, 200);
  CHECK_FALSE(code.boundaries.empty());
  for (std::int64_t b : code.boundaries) CHECK(code.at(b) == '?');
}

TEST_CASE("orbit of a rational point under an irrational rotation is guarded") {
  auto rot = SystemSpec::rotation(golden());
  auto p = orbit_point(rot, pt({rat(1, 3)}), 7);
  CHECK_FALSE(p.coords()[0].is_rational());
  // distance to the exactly recomputed point is within the carried bound
  Rat alpha = oracle::golden_fibonacci(400);
  Rat exact = mod1(Rat(1, 3) + 7 * alpha);
  auto fx = p.coords()[0].to_fixed();
  auto ex = Fixed128::from_rat(exact);
  CHECK(torus_dist_ulps(fx.value, ex.value) <= fx.err + 2);
}

TEST_CASE("negative windows agree with the exact oracle") {
  // guarded path, negative indices
  auto rot = SystemSpec::rotation(golden());
  auto origin = pt({rat(0, 1)});
  auto rs = return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)),
                       -2000, -1);
  REQUIRE(rs.boundary.empty());
  Rat alpha = oracle::golden_fibonacci(400);
  auto direct =
      oracle::rotation_return_direct(alpha, Rat(0), Rat(0), Rat(3, 20), -2000, -1);
  CHECK(rs.definite.members() == direct);

  // exact rational path, negative indices, off-origin point and center
  auto weyl = SystemSpec::weyl_affine(2, rat(3, 7));
  auto x = pt({rat(1, 7), rat(2, 7)});
  auto c = pt({rat(5, 7), rat(0, 1)});
  auto rsw = return_set(weyl, x, Neighborhood::ball(c, make_rat(1, 5)), -120, 120);
  auto directw = oracle::weyl_return_direct(2, Rat(3, 7), {Rat(1, 7), Rat(2, 7)},
                                            {Rat(5, 7), Rat(0)}, Rat(1, 5), -120, 120);
  CHECK(rsw.definite.members() == directw);
}
