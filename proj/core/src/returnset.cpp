#include "reclab/returnset.hpp"

#include <algorithm>
#include <future>
#include <memory>
#include <numeric>

#include "reclab/checked.hpp"
#include "reclab/errors.hpp"

namespace reclab {

namespace {

constexpr std::int64_t kMaxRationalDenominator = std::int64_t{1} << 31;

// Incremental per-index membership evaluation. advance() moves n -> n+1.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual Verdict verdict() const = 0;
  virtual void advance() = 0;
};

// Largest integer distance that still satisfies dist/m < eps, or -1 if none.
std::int64_t strict_threshold(const Rat& eps, std::int64_t m) {
  Rat scaled = eps * m;
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_num().get_mpz_t(),
              scaled.get_den().get_mpz_t());
  std::int64_t t = q.get_si();
  if (sgn(r) == 0) --t;  // strict inequality
  return std::min(t, m);
}

// All data rational with a small common denominator M: coordinates are
// integers v with theta = v/M, stepped exactly in int64.
class RationalTorusStepper final : public Stepper {
 public:
  RationalTorusStepper(const std::vector<TorusScalar>& x0, const TorusScalar& alpha,
                       const std::vector<TorusScalar>& center, std::int64_t m,
                       const Rat& eps, std::int64_t n0)
      : m_(m), threshold_(strict_threshold(eps, m)) {
    auto scaled = [&](const Rat& q) {
      Rat r = mod1(q) * m;  // den(q) divides m, so r is an integer
      return static_cast<std::int64_t>(r.get_num().get_si());
    };
    alpha_scaled_ = scaled(alpha.rat());
    int depth = static_cast<int>(x0.size());
    coords_.resize(static_cast<std::size_t>(depth));
    center_.resize(static_cast<std::size_t>(depth));
    for (int j = 1; j <= depth; ++j) {
      TorusScalar t = detail::weyl_coordinate(x0, alpha, n0, j);
      coords_[static_cast<std::size_t>(j - 1)] = scaled(t.rat());
      center_[static_cast<std::size_t>(j - 1)] =
          scaled(center[static_cast<std::size_t>(j - 1)].rat());
    }
  }

  Verdict verdict() const override {
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      std::int64_t diff = coords_[j] - center_[j];
      if (diff < 0) diff += m_;
      std::int64_t dist = std::min(diff, m_ - diff);
      if (dist > threshold_) return Verdict::Out;
    }
    return Verdict::In;
  }

  void advance() override {
    for (std::size_t j = coords_.size() - 1; j >= 1; --j) {
      coords_[j] += coords_[j - 1];
      if (coords_[j] >= m_) coords_[j] -= m_;
    }
    coords_[0] += alpha_scaled_;
    if (coords_[0] >= m_) coords_[0] -= m_;
  }

 private:
  std::int64_t m_;
  std::int64_t threshold_;
  std::int64_t alpha_scaled_ = 0;
  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> center_;
};

// Guarded fixed-point coordinates; error bounds accumulate additively per
// step exactly as the closed form's binomial factors dictate.
class FixedTorusStepper final : public Stepper {
 public:
  FixedTorusStepper(const std::vector<TorusScalar>& x0, const TorusScalar& alpha,
                    const std::vector<TorusScalar>& center, const Rat& eps,
                    std::int64_t n0)
      : eps_(eps_to_ulps(eps)) {
    alpha_ = alpha.to_fixed();
    int depth = static_cast<int>(x0.size());
    for (int j = 1; j <= depth; ++j) {
      coords_.push_back(weyl_fixed(x0, alpha, n0, j));
      center_.push_back(center[static_cast<std::size_t>(j - 1)].to_fixed());
    }
  }

  Verdict verdict() const override {
    Verdict v = Verdict::In;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      u128 dist = torus_dist_ulps(coords_[j].value, center_[j].value);
      u128 err = sat_add(coords_[j].err, center_[j].err);
      Verdict c = dist_verdict(dist, err, eps_);
      if (c == Verdict::Out) return Verdict::Out;
      if (c == Verdict::Boundary) v = Verdict::Boundary;
    }
    return v;
  }

  void advance() override {
    for (std::size_t j = coords_.size() - 1; j >= 1; --j)
      coords_[j] = coords_[j].add(coords_[j - 1]);
    coords_[0] = coords_[0].add(alpha_);
  }

 private:
  static Fixed128 weyl_fixed(const std::vector<TorusScalar>& x0,
                             const TorusScalar& alpha, std::int64_t n, int j) {
    Fixed128 acc = alpha.to_fixed().mul_int(binom_i128(n, static_cast<unsigned>(j)));
    for (int i = 1; i <= j; ++i)
      acc = acc.add(x0[static_cast<std::size_t>(i - 1)].to_fixed().mul_int(
          binom_i128(n, static_cast<unsigned>(j - i))));
    return acc;
  }

  Fixed128 alpha_;
  std::vector<Fixed128> coords_;
  std::vector<Fixed128> center_;
  EpsUlps eps_;
};

class CyclicStepper final : public Stepper {
 public:
  // Ball variant: distance threshold on residues; Subset variant: lookup.
  CyclicStepper(const CyclicSpec& spec, std::int64_t x0,
                const std::vector<std::int64_t>* residues,
                const std::int64_t* center, const Rat* eps, std::int64_t n0)
      : modulus_(spec.modulus), step_(mod_floor(spec.step, spec.modulus)) {
    std::int64_t nm = mod_floor(n0, modulus_);
    r_ = (x0 + (nm * step_) % modulus_) % modulus_;
    if (residues) {
      subset_ = *residues;
      mode_subset_ = true;
    } else {
      center_ = *center;
      threshold_ = strict_threshold(*eps, modulus_);
    }
  }

  Verdict verdict() const override {
    if (mode_subset_)
      return std::binary_search(subset_.begin(), subset_.end(), r_) ? Verdict::In
                                                                    : Verdict::Out;
    std::int64_t diff = r_ - center_;
    if (diff < 0) diff += modulus_;
    std::int64_t dist = std::min(diff, modulus_ - diff);
    return dist <= threshold_ ? Verdict::In : Verdict::Out;
  }

  void advance() override {
    r_ += step_;
    if (r_ >= modulus_) r_ -= modulus_;
  }

 private:
  std::int64_t modulus_, step_, r_ = 0;
  bool mode_subset_ = false;
  std::vector<std::int64_t> subset_;
  std::int64_t center_ = 0;
  std::int64_t threshold_ = -1;
};

class SturmianCylinderStepper final : public Stepper {
 public:
  SturmianCylinderStepper(const SturmianSpec& spec, const TorusScalar& x,
                          const TorusScalar& center, std::int64_t radius,
                          std::int64_t lo, std::int64_t hi, std::int64_t n0)
      : radius_(radius), n_(n0) {
    for (std::int64_t m = -radius; m <= radius; ++m)
      center_word_.push_back(sturmian_symbol(spec, center, m));
    lo_ = lo - radius;
    for (std::int64_t m = lo - radius; m <= hi + radius; ++m)
      orbit_word_.push_back(sturmian_symbol(spec, x, m));
  }

  Verdict verdict() const override {
    Verdict v = Verdict::In;
    for (std::int64_t m = -radius_; m <= radius_; ++m) {
      Verdict a = orbit_word_[static_cast<std::size_t>(n_ + m - lo_)];
      Verdict b = center_word_[static_cast<std::size_t>(m + radius_)];
      if (a == Verdict::Boundary || b == Verdict::Boundary) {
        if (v == Verdict::In) v = Verdict::Boundary;
      } else if (a != b) {
        return Verdict::Out;
      }
    }
    return v;
  }

  void advance() override { ++n_; }

 private:
  std::int64_t radius_, n_, lo_ = 0;
  std::vector<Verdict> center_word_;
  std::vector<Verdict> orbit_word_;
};

class ProductStepper final : public Stepper {
 public:
  explicit ProductStepper(std::vector<std::unique_ptr<Stepper>> parts)
      : parts_(std::move(parts)) {}

  Verdict verdict() const override {
    Verdict v = Verdict::In;
    for (const auto& p : parts_) {
      Verdict c = p->verdict();
      if (c == Verdict::Out) return Verdict::Out;
      if (c == Verdict::Boundary) v = Verdict::Boundary;
    }
    return v;
  }

  void advance() override {
    for (auto& p : parts_) p->advance();
  }

 private:
  std::vector<std::unique_ptr<Stepper>> parts_;
};

bool all_rational(const std::vector<TorusScalar>& xs) {
  return std::all_of(xs.begin(), xs.end(),
                     [](const TorusScalar& t) { return t.is_rational(); });
}

std::optional<std::int64_t> common_denominator(const std::vector<TorusScalar>& x0,
                                               const TorusScalar& alpha,
                                               const std::vector<TorusScalar>& center) {
  BigInt m = alpha.rat().get_den();
  for (const auto& t : x0) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), t.rat().get_den().get_mpz_t());
  for (const auto& t : center) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), t.rat().get_den().get_mpz_t());
  if (m > kMaxRationalDenominator) return std::nullopt;
  return m.get_si();
}

std::unique_ptr<Stepper> make_torus_stepper(const std::vector<TorusScalar>& x0,
                                            const TorusScalar& alpha,
                                            const std::vector<TorusScalar>& center,
                                            const Rat& eps, std::int64_t n0) {
  if (alpha.is_rational() && all_rational(x0) && all_rational(center)) {
    if (auto m = common_denominator(x0, alpha, center))
      return std::make_unique<RationalTorusStepper>(x0, alpha, center, *m, eps, n0);
  }
  return std::make_unique<FixedTorusStepper>(x0, alpha, center, eps, n0);
}

std::unique_ptr<Stepper> make_stepper(const SystemSpec& sys, const SystemPoint& x,
                                      const Neighborhood& u, std::int64_t lo,
                                      std::int64_t hi, std::int64_t n0) {
  return std::visit(
      [&](const auto& s) -> std::unique_ptr<Stepper> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RotationSpec> || std::is_same_v<T, WeylAffineSpec>) {
          const auto* ball = std::get_if<BallNbhd>(&u.v());
          if (!ball) throw std::invalid_argument("torus systems take ball neighborhoods");
          return make_torus_stepper(x.coords(), s.alpha, ball->center.coords(),
                                    ball->eps, n0);
        } else if constexpr (std::is_same_v<T, CyclicSpec>) {
          if (const auto* sub = std::get_if<SubsetNbhd>(&u.v())) {
            for (std::int64_t r : sub->residues)
              if (r < 0 || r >= s.modulus)
                throw std::invalid_argument("subset residue outside Z/N");
            return std::make_unique<CyclicStepper>(s, x.residue_value(), &sub->residues,
                                                   nullptr, nullptr, n0);
          }
          const auto* ball = std::get_if<BallNbhd>(&u.v());
          if (!ball) throw std::invalid_argument("cyclic systems take subset or ball neighborhoods");
          std::int64_t c = ball->center.residue_value();
          return std::make_unique<CyclicStepper>(s, x.residue_value(), nullptr, &c,
                                                 &ball->eps, n0);
        } else if constexpr (std::is_same_v<T, SturmianSpec>) {
          const auto* cyl = std::get_if<CylinderNbhd>(&u.v());
          if (!cyl) throw std::invalid_argument("sturmian systems take cylinder neighborhoods");
          return std::make_unique<SturmianCylinderStepper>(
              s, x.coords()[0], cyl->center.coords()[0], cyl->radius, lo, hi, n0);
        } else {
          const auto* ball = std::get_if<BallNbhd>(&u.v());
          if (!ball) throw std::invalid_argument("product systems take ball neighborhoods");
          std::vector<std::unique_ptr<Stepper>> parts;
          for (std::size_t i = 0; i < s.parts.size(); ++i) {
            Neighborhood part_ball =
                Neighborhood::ball(ball->center.parts()[i], ball->eps);
            parts.push_back(make_stepper(s.parts[i], x.parts()[i], part_ball, lo, hi, n0));
          }
          return std::make_unique<ProductStepper>(std::move(parts));
        }
      },
      sys.v());
}

void validate_neighborhood(const SystemSpec& sys, const Neighborhood& u) {
  if (const auto* ball = std::get_if<BallNbhd>(&u.v())) validate_point(sys, ball->center);
  if (const auto* cyl = std::get_if<CylinderNbhd>(&u.v())) validate_point(sys, cyl->center);
}

struct ChunkResult {
  std::vector<std::int64_t> members;
  std::vector<std::int64_t> boundary;
};

ChunkResult scan_chunk(const SystemSpec& sys, const SystemPoint& x,
                       const Neighborhood& u, std::int64_t lo, std::int64_t hi,
                       std::int64_t chunk_lo, std::int64_t chunk_hi) {
  ChunkResult out;
  auto stepper = make_stepper(sys, x, u, lo, hi, chunk_lo);
  for (std::int64_t n = chunk_lo; n <= chunk_hi; ++n) {
    switch (stepper->verdict()) {
      case Verdict::In: out.members.push_back(n); break;
      case Verdict::Boundary: out.boundary.push_back(n); break;
      case Verdict::Out: break;
    }
    if (n < chunk_hi) stepper->advance();
  }
  return out;
}

}  // namespace

ReturnSetResult return_set(const SystemSpec& sys, const SystemPoint& x,
                           const Neighborhood& u, std::int64_t lo, std::int64_t hi,
                           int threads) {
  if (lo > hi) throw std::invalid_argument("return_set: lo > hi");
  std::int64_t span = checked_add(checked_sub(hi, lo), 1);
  if (span > kMaxScanSpan)
    throw budget_error("scan span exceeds configured limit");
  validate_point(sys, x);
  validate_neighborhood(sys, u);

  int workers = std::max(1, threads);
  workers = static_cast<int>(std::min<std::int64_t>(workers, span));
  std::vector<std::pair<std::int64_t, std::int64_t>> chunks;
  std::int64_t chunk_size = span / workers;
  std::int64_t rem = span % workers;
  std::int64_t at = lo;
  for (int i = 0; i < workers; ++i) {
    std::int64_t len = chunk_size + (i < rem ? 1 : 0);
    chunks.emplace_back(at, at + len - 1);
    at += len;
  }

  std::vector<ChunkResult> results(chunks.size());
  if (workers == 1) {
    results[0] = scan_chunk(sys, x, u, lo, hi, chunks[0].first, chunks[0].second);
  } else {
    std::vector<std::future<ChunkResult>> futs;
    for (auto [clo, chi] : chunks)
      futs.push_back(std::async(std::launch::async, scan_chunk, std::cref(sys),
                                std::cref(x), std::cref(u), lo, hi, clo, chi));
    for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  }

  ReturnSetResult out;
  std::vector<std::int64_t> members;
  for (auto& r : results) {
    members.insert(members.end(), r.members.begin(), r.members.end());
    out.boundary.insert(out.boundary.end(), r.boundary.begin(), r.boundary.end());
  }
  out.definite = IntegerWindow::from_sorted(lo, hi, std::move(members));
  return out;
}

Verdict membership_verdict(const SystemSpec& sys, const SystemPoint& x,
                           const Neighborhood& u, std::int64_t n) {
  return neighborhood_verdict(sys, u, orbit_point(sys, x, n));
}

SturmianCoding sturmian_code(const SystemSpec& sys, std::int64_t lo, std::int64_t hi) {
  const auto* st = std::get_if<SturmianSpec>(&sys.v());
  if (!st) throw std::invalid_argument("sturmian_code needs a sturmian system");
  if (lo > hi) throw std::invalid_argument("sturmian_code: lo > hi");
  if (checked_add(checked_sub(hi, lo), 1) > kMaxScanSpan)
    throw budget_error("coding span exceeds configured limit");
  SturmianCoding out;
  out.lo = lo;
  out.symbols.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) {
    Verdict v = sturmian_symbol(*st, st->base, n);
    if (v == Verdict::Boundary) {
      out.symbols.push_back('?');
      out.boundaries.push_back(n);
    } else {
      out.symbols.push_back(v == Verdict::In ? '1' : '0');
    }
  }
  return out;
}

}  // namespace reclab
