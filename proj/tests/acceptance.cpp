// Acceptance suite: every criterion prints one PASS/FAIL line and the binary
// exits nonzero if any fail. Expected values come from the independent
// oracles in oracles.{hpp,cpp} or are exact by construction.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "experiments.hpp"
#include "oracles.hpp"
#include "reclab/checked.hpp"
#include "reclab/ramsey.hpp"
#include "reclab/returnset.hpp"
#include "reclab/witness.hpp"

using namespace reclab;

namespace {

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<bool(std::string&)> body;
};

bool expect(bool ok, const std::string& what, std::string& why) {
  if (!ok && why.empty()) why = what;
  return ok;
}

TorusScalar rat(std::int64_t n, std::int64_t d) {
  return TorusScalar::rational(make_rat(n, d));
}
SystemPoint pt(std::vector<TorusScalar> c) { return SystemPoint::torus(std::move(c)); }

SearchBudget budget(std::int64_t lo, std::int64_t hi) {
  SearchBudget b;
  b.lo = lo;
  b.hi = hi;
  return b;
}

struct Corpus {
  std::vector<std::int64_t> terms;
  int d;
};

std::vector<Corpus> random_corpus(std::size_t cases) {
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<int> len(1, 6);
  std::uniform_int_distribution<std::int64_t> entry(1, 50);
  std::uniform_int_distribution<int> dd(1, 4);
  std::vector<Corpus> out;
  out.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    Corpus c;
    int n = len(rng);
    for (int t = 0; t < n; ++t) c.terms.push_back(entry(rng));
    c.d = dd(rng);
    out.push_back(std::move(c));
  }
  return out;
}

// ----- criterion bodies ------------------------------------------------------

bool crit1_oracle_equivalence(std::string& why) {
  auto corpus = random_corpus(1000);
  for (const auto& c : corpus) {
    auto p = SequenceSpec::explicit_terms(c.terms);
    if (!expect(generate_sg(p, c.d).members() == oracle::sg_bruteforce(c.terms, c.d),
                "generate_sg disagrees with the epsilon-vector oracle", why))
      return false;
    if (!expect(generate_fs(p).members() == oracle::fs_bruteforce(c.terms),
                "generate_fs disagrees with the subset-sum oracle", why))
      return false;
  }
  return true;
}

bool crit2_chain(std::string& why) {
  auto corpus = random_corpus(1000);
  for (const auto& c : corpus) {
    auto p = SequenceSpec::explicit_terms(c.terms);
    int n = static_cast<int>(c.terms.size());
    auto fs = generate_fs(p).members();
    std::vector<std::int64_t> prev;
    for (int d = 1; d <= n + 1; ++d) {
      auto cur = generate_sg(p, d).members();
      if (!expect(std::includes(fs.begin(), fs.end(), cur.begin(), cur.end()),
                  "SG_d escapes FS", why))
        return false;
      if (d > 1 && !expect(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()),
                           "SG_d escapes SG_{d+1}", why))
        return false;
      if (d >= n - 1 && !expect(cur == fs, "SG_d != FS for d >= |P|-1", why))
        return false;
      prev = std::move(cur);
    }
  }
  return true;
}

bool crit3_partition_flagship(std::string& why) {
  auto p = make_super_lacunary(3, 3, 12);  // 3, 9, ..., 3^12
  std::int64_t hi = 1;
  for (int i = 0; i < 13; ++i) hi *= 3;  // 3^13
  auto lw = partition_sg2(p, 1, hi);
  auto res = find_monochromatic_triple(lw);
  if (!expect(!res.node_limited, "class search hit the node limit", why)) return false;
  if (!expect(!res.triple.has_value(), "a class carries a monochromatic triple", why))
    return false;
  if (!expect(res.truncated == 0, "triples were window-truncated", why)) return false;

  LabeledWindow whole;
  whole.window = lw.window;
  whole.labels.assign(lw.window.size(), "all");
  auto sanity = find_monochromatic_triple(whole);
  if (!expect(sanity.triple.has_value(), "unpartitioned SG_2 lost its triple", why))
    return false;
  return expect(sanity.triple->a1 == 3 && sanity.triple->a2 == 9 && sanity.triple->a3 == 27,
                "unpartitioned triple is not (3, 9, 27)", why);
}

bool crit4_exact_rotation(std::string& why) {
  auto rot = SystemSpec::rotation(rat(2, 5));
  auto origin = pt({rat(0, 1)});
  auto rs = return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)),
                       -10000, 10000);
  if (!expect(rs.boundary.empty(), "2/5 scan has boundary indices", why)) return false;
  std::vector<std::int64_t> want;
  for (std::int64_t n = -10000; n <= 10000; ++n)
    if (n % 5 == 0) want.push_back(n);
  if (!expect(rs.definite.members() == want, "N(0, B(0, 3/20)) != 5Z for alpha = 2/5", why))
    return false;

  std::mt19937_64 rng(44);
  std::uniform_int_distribution<std::int64_t> qd(2, 50);
  int done = 0;
  while (done < 50) {
    std::int64_t q = qd(rng);
    std::uniform_int_distribution<std::int64_t> pd(1, q - 1);
    std::int64_t p = pd(rng);
    if (std::gcd(p, q) != 1) continue;
    ++done;
    Rat eps(1, static_cast<long>(q + 1));
    auto r = SystemSpec::rotation(TorusScalar::rational(make_rat(p, q)));
    auto rsq = return_set(r, origin, Neighborhood::ball(origin, eps), -10000, 10000);
    std::vector<std::int64_t> w;
    for (std::int64_t n = -10000; n <= 10000; ++n)
      if (n % q == 0) w.push_back(n);
    if (!expect(rsq.definite.members() == w,
                "return set != qZ for p/q = " + std::to_string(p) + "/" + std::to_string(q),
                why))
      return false;
  }
  return true;
}

bool crit5_nil2_generator(std::string& why) {
  auto weyl = SystemSpec::weyl_affine(2, rat(1, 4));
  auto origin = pt({rat(0, 1), rat(0, 1)});
  auto rs = return_set(weyl, origin, Neighborhood::ball(origin, make_rat(1, 10)), 0, 10000);
  if (!expect(rs.boundary.empty(), "weyl scan has boundary indices", why)) return false;
  std::vector<std::int64_t> want;
  for (std::int64_t n = 0; n <= 10000; n += 8) want.push_back(n);
  return expect(rs.definite.members() == want, "N != 8Z on [0, 10^4]", why);
}

bool crit6_ip_positive_control(std::string& why) {
  auto rot = SystemSpec::rotation(TorusScalar::from_cf(parse_cf("golden")));
  auto origin = pt({rat(0, 1)});
  auto res = rp_witness(rot, origin, origin, 1, make_rat(3, 20), budget(1, 100));
  if (!expect(res.search.found(), "no witness found", why)) return false;
  const auto& w = *res.search.witness;
  if (!expect(w.entries == std::vector<std::int64_t>{5, 8}, "witness is not (5, 8)", why))
    return false;
  if (!expect(w.sums == std::vector<std::int64_t>{5, 8, 13}, "sums are not {5, 8, 13}", why))
    return false;
  auto target =
      return_set(rot, origin, Neighborhood::ball(origin, make_rat(3, 20)), 1, 100).definite;
  return expect(verify_fs_witness(target, w), "witness fails independent verification", why);
}

bool crit7_separation_negative_control(std::string& why) {
  // Analytic bound: if n1, n2 in N(x, B(y, eps)) for a rotation then
  // ||n1 a + x - y|| < eps and ||n2 a + x - y|| < eps, hence
  // ||(n1+n2) a + x - y|| >= ||x - y|| - 2 eps >= eps whenever
  // ||x - y|| >= 3 eps. The sum can never land in the ball, so every
  // length-2 search must exhaust, on any window.
  struct Case {
    TorusScalar alpha;
    Rat y;
    Rat eps;
    std::int64_t hi;
  };
  std::vector<Case> cases{
      {TorusScalar::from_cf(parse_cf("golden")), Rat(1, 2), Rat(1, 10), 100000},
      {rat(2, 5), Rat(2, 5), Rat(1, 10), 10000},
      {TorusScalar::from_cf(parse_cf("sqrt2m1")), Rat(1, 3), Rat(1, 10), 10000},
  };
  for (const auto& c : cases) {
    auto rot = SystemSpec::rotation(c.alpha);
    auto x = pt({rat(0, 1)});
    auto y = pt({TorusScalar::rational(c.y)});
    auto res = rp_witness(rot, x, y, 1, c.eps, budget(1, c.hi));
    if (!expect(!res.search.found(), "separated pair produced a witness", why))
      return false;
    if (!expect(*res.search.stats.exhausted == ExhaustionReason::SpaceExhausted,
                "separated search was cut off before exhausting its window", why))
      return false;
  }
  return true;
}

bool crit8_fiber_witness(std::string& why) {
  auto weyl = SystemSpec::weyl_affine(2, TorusScalar::from_cf(parse_cf("sqrt2m1")));
  auto x = pt({rat(0, 1), rat(0, 1)});
  auto y = pt({rat(0, 1), rat(1, 2)});
  auto res = rp_witness(weyl, x, y, 1, make_rat(1, 10), budget(1, 1000000));
  if (!res.search.found()) {
    // the window may be raised once
    res = rp_witness(weyl, x, y, 1, make_rat(1, 10), budget(1, 10000000));
  }
  if (!expect(res.search.found(), "persistent exhaustion up to 10^7", why)) return false;
  const auto& w = *res.search.witness;
  for (std::int64_t s : w.sums) {
    Verdict v = membership_verdict(weyl, x, Neighborhood::ball(y, make_rat(1, 10)), s);
    if (!expect(v == Verdict::In, "witness sum fails the closed-form recheck", why))
      return false;
  }
  return true;
}

bool crit9_pigeonhole(std::string& why) {
  FiniteMeasureSystem fms(10, 1);
  std::vector<std::string> names;
  for (std::int64_t i = 0; i < 10; ++i) {
    std::vector<std::int64_t> residues;
    for (std::int64_t v = 0; v <= 4; ++v) residues.push_back(mod_floor(v - i, 10));
    std::sort(residues.begin(), residues.end());
    names.push_back("E" + std::to_string(i));
    fms.add_set(names.back(), residues);
  }
  auto res = pigeonhole_select(fms, names, 2, make_rat(1, 20));
  if (!expect(res.selection.has_value(), "shifted intervals yielded no pair", why))
    return false;
  if (!expect(res.selection->measure >= Rat(1, 4) - Rat(1, 20),
              "pair measure below 1/4 - 1/20", why))
    return false;

  std::mt19937_64 rng(220);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<std::int64_t> nd(4, 64);
    std::int64_t n = nd(rng);
    FiniteMeasureSystem sys(n, 1);
    std::uniform_int_distribution<int> sc(2, 6);
    std::uniform_int_distribution<std::int64_t> rd(0, n - 1);
    int count = sc(rng);
    std::vector<std::string> en;
    for (int i = 0; i < count; ++i) {
      std::set<std::int64_t> residues;
      std::int64_t size = 1 + rd(rng) % n;
      while (static_cast<std::int64_t>(residues.size()) < size) residues.insert(rd(rng));
      en.push_back("E" + std::to_string(i));
      sys.add_set(en.back(), std::vector<std::int64_t>(residues.begin(), residues.end()));
    }
    int k = std::min(count, 2 + (iter % 2));
    auto r = pigeonhole_select(sys, en, k, make_rat(1, 20));
    if (r.selection) {
      BitVec acc = sys.set(en[static_cast<std::size_t>(r.selection->indices[0])]);
      for (std::size_t i = 1; i < r.selection->indices.size(); ++i)
        acc = acc.intersect(sys.set(en[static_cast<std::size_t>(r.selection->indices[i])]));
      Rat mu = sys.measure(acc);
      if (!expect(mu == r.selection->measure, "reported measure mismatches recount", why))
        return false;
      if (!expect(mu >= rat_pow(r.min_measure, static_cast<unsigned>(k)) - Rat(1, 20),
                  "selection violates the a^k - eps bound", why))
        return false;
    }
  }
  return true;
}

bool crit10_finite_order_witnesses(std::string& why) {
  FiniteMeasureSystem fms(8, 1);
  fms.add_set("A", std::vector<std::int64_t>{0});
  fms.add_set("U", std::vector<std::int64_t>{0, 1});
  auto p = eval_window(SetDescriptor::ap(8, 0), 1, 100);

  auto poi = poincare_order_witness(p, fms, "A", 2, budget(1, 100));
  if (!expect(poi.search.found() &&
                  poi.search.witness->entries == std::vector<std::int64_t>{8, 16},
              "poincare witness is not (8, 16)", why))
    return false;
  if (!expect(*poi.measure == Rat(1, 8), "poincare measure is not 1/8", why)) return false;

  auto bir = birkhoff_order_witness(p, fms, "U", 2, budget(1, 100));
  if (!expect(bir.search.found() &&
                  bir.search.witness->entries == std::vector<std::int64_t>{8, 16},
              "birkhoff witness is not (8, 16)", why))
    return false;

  FiniteMeasureSystem z2(2, 1);
  z2.add_set("A", std::vector<std::int64_t>{0});
  auto odd = IntegerWindow::from_sorted(1, 5, {1, 3, 5});
  auto res = poincare_order_witness(odd, z2, "A", 1, budget(1, 5));
  return expect(!res.search.found(), "odd-shift Z/2 case found a witness", why);
}

bool crit11_determinism_and_verify(std::string& why) {
  using namespace reclab::cli;
  std::vector<std::string> configs{
      R"(experiment = gen-set
window = 0:2000
[set]
kind = sg
p = super-lacunary:3,3,7
d = 2
)",
      R"(experiment = rp-witness
d = 1
eps = 3/20
[system]
kind = rotation
alpha = cf:golden
[x]
point = 0
[y]
point = 0
[budget]
window = 1:100
)",
      R"(experiment = poincare-d
d = 2
set = A
[fms]
modulus = 8
step = 1
[fms.sets]
A = 0
[p]
kind = ap
modulus = 8
residue = 0
[budget]
window = 1:100
)",
      R"(experiment = pigeonhole
k = 2
eps = 1/20
sets = E0,E1
[fms]
modulus = 10
step = 1
[fms.sets]
E0 = 0,1,2,3,4
E1 = 9,0,1,2,3
)",
      R"(experiment = ramsey-sg2
window = 1:19683
[p]
seed = 3
slack = 3
count = 8
)",
      R"(experiment = cube
d = 2
n = 1,2
[system]
kind = rotation
alpha = 1/4
[x]
point = 0
)",
  };
  Json rp_report;
  for (const auto& text : configs) {
    auto config = parse_config_text(text);
    auto a = run_experiment(config, 1);
    auto b = run_experiment(config, 1);
    if (!expect(a.report.at("canonical_hash") == b.report.at("canonical_hash"),
                "two runs hash differently", why))
      return false;
    auto v = verify_report(a.report);
    if (!expect(v.ok, "verify rejected a fresh report: " + v.first_failure, why))
      return false;
    if (config.get("experiment") == "rp-witness") rp_report = a.report;
  }
  auto forged = rp_report;
  forged["outcome"]["witness"]["sums"][0] = 6;
  if (!expect(!verify_report(forged).ok, "verify accepted a mutated witness sum", why))
    return false;

  // the built binary round-trips with the documented exit codes
  std::string dir = "/tmp/reclab-acceptance";
  if (std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) != 0)
    return expect(false, "cannot prepare the scratch directory", why);
  {
    std::ofstream out(dir + "/rp.conf");
    out << configs[1];
  }
  std::string bin = RECLAB_BIN;
  int rc = std::system((bin + " run " + dir + "/rp.conf -o " + dir + "/rp.json > /dev/null").c_str());
  if (!expect(rc == 0, "binary run exited nonzero", why)) return false;
  rc = std::system((bin + " verify " + dir + "/rp.json > /dev/null").c_str());
  if (!expect(rc == 0, "binary verify exited nonzero on a fresh report", why)) return false;
  // shrink the recorded eps: the membership recheck must reject the report
  rc = std::system(("sed -i 's|3/20|1/20|' " + dir + "/rp.json").c_str());
  if (!expect(rc == 0, "sed tamper step failed", why)) return false;
  rc = std::system((bin + " verify " + dir + "/rp.json > /dev/null 2>&1").c_str());
  if (!expect(rc != 0, "binary verify accepted a tampered report", why)) return false;

  // --require-witness on the always-exhausted separated pair exits 1
  {
    std::ofstream out(dir + "/sep.conf");
    out << R"(experiment = rp-witness
d = 1
eps = 1/10
[system]
kind = rotation
alpha = cf:golden
[x]
point = 0
[y]
point = 1/2
[budget]
window = 1:2000
)";
  }
  rc = std::system((bin + " run " + dir + "/sep.conf --require-witness -o " + dir +
                    "/sep.json > /dev/null")
                       .c_str());
  rc = WEXITSTATUS(rc);
  return expect(rc == 1, "--require-witness did not exit 1 on exhaustion", why);
}

bool crit12_sturmian_complexity(std::string& why) {
  auto sys = SystemSpec::sturmian(TorusScalar::from_cf(parse_cf("golden")), rat(1, 10));
  auto code = sturmian_code(sys, 0, 10000);
  if (!expect(code.boundaries.empty(), "coding has undecided positions", why))
    return false;
  for (std::size_t len = 1; len <= 12; ++len) {
    std::set<std::string> factors;
    for (std::size_t i = 0; i + len <= code.symbols.size(); ++i)
      factors.insert(code.symbols.substr(i, len));
    if (!expect(factors.size() == len + 1,
                "length-" + std::to_string(len) + " factor count is " +
                    std::to_string(factors.size()),
                why))
      return false;
  }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "generator/oracle equivalence (1000 random cases)", 10.0, crit1_oracle_equivalence},
      {2, "chain property SG_d within SG_{d+1} within FS", 10.0, crit2_chain},
      {3, "partition flagship: no class of SG_2(3^i) has a triple", 60.0, crit3_partition_flagship},
      {4, "exact rotation returns: 5Z and 50 random qZ", 5.0, crit4_exact_rotation},
      {5, "nil-2 generator: weyl(2, 1/4) gives 8Z", 5.0, crit5_nil2_generator},
      {6, "IP-witness positive control: golden (5, 8)", 5.0, crit6_ip_positive_control},
      {7, "separation negative control always exhausts", 10.0, crit7_separation_negative_control},
      {8, "weyl fiber witness within |n| <= 10^6", 300.0, crit8_fiber_witness},
      {9, "pigeonhole bound, exact and randomized", 10.0, crit9_pigeonhole},
      {10, "poincare/birkhoff order-d on finite systems", 1.0, crit10_finite_order_witnesses},
      {11, "determinism, verification, exit codes", 5.0, crit11_determinism_and_verify},
      {12, "sturmian factor complexity L+1 up to L = 12", 10.0, crit12_sturmian_complexity},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::string why;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.body(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(stop - start).count();
    if (ok && secs > c.limit_seconds) {
      ok = false;
      why = "runtime " + std::to_string(secs) + "s exceeds " +
            std::to_string(c.limit_seconds) + "s";
    }
    std::printf("%s  criterion %2d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.title.c_str(), secs, why.empty() ? "" : " -- ", why.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
