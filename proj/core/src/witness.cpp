#include "reclab/witness.hpp"

#include <algorithm>
#include <unordered_set>

#include "reclab/checked.hpp"
#include "reclab/errors.hpp"

namespace reclab {

std::vector<std::int64_t> fs_sums(std::span<const std::int64_t> entries) {
  std::size_t d = entries.size();
  std::vector<std::int64_t> sums;
  sums.reserve((std::size_t{1} << d) - 1);
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) s = checked_add(s, entries[i]);
    sums.push_back(s);
  }
  return sums;
}

bool verify_fs_witness(const IntegerWindow& target, const FSWitness& w,
                       std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.entries.empty()) return fail("witness has no entries");
  auto sums = fs_sums(w.entries);
  if (sums != w.sums) return fail("recorded sums do not match the entries");
  std::int64_t shift = w.base.value_or(0);
  for (std::int64_t s : sums) {
    std::int64_t v = checked_add(s, shift);
    if (!target.contains(v))
      return fail("sum " + std::to_string(v) + " is not in the target");
  }
  if (w.base && !target.contains(*w.base))
    return fail("base " + std::to_string(*w.base) + " is not in the target");
  return true;
}

const char* to_string(ExhaustionReason r) {
  switch (r) {
    case ExhaustionReason::SpaceExhausted: return "space-exhausted";
    case ExhaustionReason::NodeLimit: return "node-limit";
    case ExhaustionReason::CandidateLimit: return "candidate-limit";
  }
  return "?";
}

namespace {

// Membership index over the target window; bitset when the span is small
// enough, binary search otherwise.
class MemberIndex {
 public:
  explicit MemberIndex(const IntegerWindow& w) : w_(w) {
    std::int64_t span = w.hi() - w.lo() + 1;
    if (span <= kMaxScanSpan) {
      bits_.assign(static_cast<std::size_t>((span + 63) / 64), 0);
      for (std::int64_t m : w.members()) {
        std::int64_t off = m - w.lo();
        bits_[static_cast<std::size_t>(off / 64)] |= std::uint64_t{1} << (off % 64);
      }
      use_bits_ = true;
    }
  }

  bool contains(std::int64_t v) const {
    if (v < w_.lo() || v > w_.hi()) return false;
    if (use_bits_) {
      std::int64_t off = v - w_.lo();
      return (bits_[static_cast<std::size_t>(off / 64)] >> (off % 64)) & 1;
    }
    return w_.contains(v);
  }

 private:
  const IntegerWindow& w_;
  bool use_bits_ = false;
  std::vector<std::uint64_t> bits_;
};

enum class LeafAction : std::uint8_t { Accept, Reject, Abort };

struct EngineHooks {
  // Extra pruning after the structural checks pass; returning false vetoes
  // the candidate (pop is not called for vetoed candidates).
  std::function<bool(std::int64_t c, std::span<const std::int64_t> new_sums)> push;
  std::function<void()> pop;
  // Leaf decision; may decorate the draft witness (base point, etc.).
  std::function<LeafAction(FSWitness& draft)> accept;
};

class FsSearchEngine {
 public:
  FsSearchEngine(const IntegerWindow& target, int d, const SearchBudget& budget,
                 const WitnessOptions& opts, EngineHooks hooks)
      : target_(target), index_(target), d_(d), budget_(budget), opts_(opts),
        hooks_(std::move(hooks)) {
    for (std::int64_t m : target.members()) {
      if (m < budget.lo || m > budget.hi) continue;
      if (m < 0 && !opts.allow_negative) continue;
      if (m == 0 && !opts.allow_zero) continue;
      pool_.push_back(m);
    }
  }

  WitnessResult run() {
    WitnessResult out;
    if (d_ < 1 || d_ > 20) throw std::invalid_argument("witness length out of range");
    sums_.reserve((std::size_t{1} << d_) - 1);
    Outcome o = dfs(0);
    out.stats = stats_;
    if (o == Outcome::Found) {
      FSWitness w;
      w.entries = entries_;
      w.sums = fs_sums(w.entries);
      w.options = opts_;
      if (draft_base_) w.base = draft_base_;
      out.witness = std::move(w);
    } else {
      if (node_limited_)
        out.stats.exhausted = ExhaustionReason::NodeLimit;
      else if (candidate_limited_)
        out.stats.exhausted = ExhaustionReason::CandidateLimit;
      else
        out.stats.exhausted = ExhaustionReason::SpaceExhausted;
    }
    return out;
  }

 private:
  enum class Outcome : std::uint8_t { Found, NotFound, Aborted };

  Outcome dfs(int level) {
    std::size_t start = 0;
    if (!entries_.empty()) {
      auto it = opts_.allow_repeats
                    ? std::lower_bound(pool_.begin(), pool_.end(), entries_.back())
                    : std::upper_bound(pool_.begin(), pool_.end(), entries_.back());
      start = static_cast<std::size_t>(it - pool_.begin());
    }
    std::int64_t level_candidates = 0;
    for (std::size_t i = start; i < pool_.size(); ++i) {
      if (++level_candidates > budget_.max_candidates_per_level) {
        candidate_limited_ = true;
        break;
      }
      ++stats_.candidates;
      std::int64_t c = pool_[i];
      if (!structural_ok(c)) continue;
      if (hooks_.push && !hooks_.push(c, new_sums_)) continue;
      ++stats_.nodes;
      if (stats_.nodes > budget_.max_nodes) {
        node_limited_ = true;
        if (hooks_.pop) hooks_.pop();
        return Outcome::Aborted;
      }
      entries_.push_back(c);
      std::size_t old_size = sums_.size();
      sums_.insert(sums_.end(), new_sums_.begin(), new_sums_.end());
      if (opts_.require_distinct_sums)
        for (std::int64_t s : new_sums_) sum_set_.insert(s);

      Outcome o;
      if (level + 1 == d_) {
        if (hooks_.accept) {
          FSWitness draft;
          draft.entries = entries_;
          draft.sums = sums_;
          draft.options = opts_;
          LeafAction a = hooks_.accept(draft);
          if (a == LeafAction::Accept) {
            draft_base_ = draft.base;
            o = Outcome::Found;
          } else if (a == LeafAction::Abort) {
            node_limited_ = true;
            o = Outcome::Aborted;
          } else {
            o = Outcome::NotFound;
          }
        } else {
          o = Outcome::Found;
        }
      } else {
        o = dfs(level + 1);
      }
      if (o == Outcome::Found) return o;

      entries_.pop_back();
      if (opts_.require_distinct_sums)
        for (std::size_t k = old_size; k < sums_.size(); ++k) sum_set_.erase(sums_[k]);
      sums_.resize(old_size);
      if (hooks_.pop) hooks_.pop();
      if (o == Outcome::Aborted) return o;
    }
    return Outcome::NotFound;
  }

  bool structural_ok(std::int64_t c) {
    // differences with earlier entries stay in the target (default regime)
    if (opts_.require_gaps_in_target) {
      for (std::int64_t e : entries_) {
        std::int64_t diff = c - e;
        if (diff != 0 && !index_.contains(diff)) return false;
      }
    }
    new_sums_.clear();
    new_sums_.push_back(c);
    for (std::int64_t s : sums_) {
      std::int64_t ns;
      if (__builtin_add_overflow(s, c, &ns)) return false;
      new_sums_.push_back(ns);
    }
    for (std::int64_t ns : new_sums_)
      if (!index_.contains(ns)) return false;
    if (opts_.require_distinct_sums) {
      for (std::size_t a = 0; a < new_sums_.size(); ++a) {
        if (sum_set_.contains(new_sums_[a])) return false;
        for (std::size_t b = a + 1; b < new_sums_.size(); ++b)
          if (new_sums_[a] == new_sums_[b]) return false;
      }
    }
    return true;
  }

  const IntegerWindow& target_;
  MemberIndex index_;
  int d_;
  SearchBudget budget_;
  WitnessOptions opts_;
  EngineHooks hooks_;
  std::vector<std::int64_t> pool_;
  std::vector<std::int64_t> entries_;
  std::vector<std::int64_t> sums_;
  std::vector<std::int64_t> new_sums_;
  std::unordered_set<std::int64_t> sum_set_;
  std::optional<std::int64_t> draft_base_;
  SearchStats stats_;
  bool node_limited_ = false;
  bool candidate_limited_ = false;
};

}  // namespace

WitnessResult find_fs_witness(const IntegerWindow& target, int d,
                              const SearchBudget& budget, const WitnessOptions& opts) {
  FsSearchEngine engine(target, d, budget, opts, {});
  return engine.run();
}

RpWitnessResult rp_witness(const SystemSpec& sys, const SystemPoint& x,
                           const SystemPoint& y, int d, const Rat& eps,
                           const SearchBudget& budget, const WitnessOptions& opts,
                           int threads) {
  auto rs = return_set(sys, x, Neighborhood::ball(y, eps), budget.lo, budget.hi, threads);
  RpWitnessResult out;
  out.target_size = static_cast<std::int64_t>(rs.definite.size());
  out.boundary_count = static_cast<std::int64_t>(rs.boundary.size());
  out.search = find_fs_witness(rs.definite, d + 1, budget, opts);
  return out;
}

SgContainmentResult check_sg_containment(const SequenceSpec& p, int d,
                                         const SetDescriptor& target,
                                         std::int64_t lo, std::int64_t hi,
                                         int threads) {
  IntegerWindow sg = generate_sg(p, d);
  IntegerWindow tw = eval_window(target, lo, hi, threads);
  SgContainmentResult out;
  for (std::int64_t s : sg.members()) {
    if (s < lo || s > hi) {
      ++out.out_of_window;
      continue;
    }
    if (!tw.contains(s)) {
      out.status = SgContainmentResult::Status::Counterexample;
      out.counterexample = s;
      return out;
    }
    ++out.checked;
  }
  out.status = out.out_of_window > 0 ? SgContainmentResult::Status::WindowTruncated
                                     : SgContainmentResult::Status::Contained;
  return out;
}

WitnessResult intersective_witness(const IntegerWindow& p, const IntegerWindow& f,
                                   int d, const SearchBudget& budget,
                                   const WitnessOptions& opts) {
  MemberIndex f_index(f);
  std::int64_t nodes_used = 0;
  EngineHooks hooks;
  hooks.accept = [&](FSWitness& draft) {
    for (std::int64_t a : f.members()) {
      if (++nodes_used > budget.max_nodes) return LeafAction::Abort;
      bool ok = true;
      for (std::int64_t s : draft.sums) {
        std::int64_t v;
        if (__builtin_add_overflow(a, s, &v) || !f_index.contains(v)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        draft.base = a;
        return LeafAction::Accept;
      }
    }
    return LeafAction::Reject;
  };
  FsSearchEngine engine(p, d, budget, opts, std::move(hooks));
  return engine.run();
}

PoincareResult poincare_order_witness(const IntegerWindow& p,
                                      const FiniteMeasureSystem& fms,
                                      const std::string& set_name, int d,
                                      const SearchBudget& budget,
                                      const WitnessOptions& opts) {
  const BitVec& a = fms.set(set_name);
  if (!a.any()) throw std::invalid_argument("poincare witness needs a positive-measure set");
  std::vector<BitVec> stack{a};
  EngineHooks hooks;
  hooks.push = [&](std::int64_t, std::span<const std::int64_t> new_sums) {
    // refine by preimages of the base set; monotone, so empty partials prune
    BitVec refined = stack.back();
    for (std::int64_t s : new_sums) refined = refined.intersect(fms.preimage(a, s));
    if (!refined.any()) return false;
    stack.push_back(std::move(refined));
    return true;
  };
  hooks.pop = [&] { stack.pop_back(); };
  hooks.accept = [&](FSWitness&) { return LeafAction::Accept; };
  FsSearchEngine engine(p, d, budget, opts, std::move(hooks));
  PoincareResult out;
  out.search = engine.run();
  if (out.search.found())
    out.measure = fms.measure_intersection(set_name, out.search.witness->sums);
  return out;
}

BirkhoffResult birkhoff_order_witness(const IntegerWindow& p,
                                      const FiniteMeasureSystem& fms,
                                      const std::string& open_set_name, int d,
                                      const SearchBudget& budget,
                                      const WitnessOptions& opts) {
  const BitVec& u = fms.set(open_set_name);
  if (!u.any()) throw std::invalid_argument("birkhoff witness needs a nonempty open set");
  std::vector<BitVec> stack{u};
  EngineHooks hooks;
  hooks.push = [&](std::int64_t, std::span<const std::int64_t> new_sums) {
    BitVec refined = stack.back();
    for (std::int64_t s : new_sums) refined = refined.intersect(fms.preimage(u, s));
    if (!refined.any()) return false;
    stack.push_back(std::move(refined));
    return true;
  };
  hooks.pop = [&] { stack.pop_back(); };
  hooks.accept = [&](FSWitness&) { return LeafAction::Accept; };
  FsSearchEngine engine(p, d, budget, opts, std::move(hooks));
  BirkhoffResult out;
  out.search = engine.run();
  if (out.search.found()) {
    BitVec final_set =
        fms.intersection_set(u, out.search.witness->sums);
    out.intersection_size = final_set.count();
  }
  return out;
}

PigeonholeResult pigeonhole_select(const FiniteMeasureSystem& fms,
                                   std::span<const std::string> set_names, int k,
                                   const Rat& eps) {
  if (k < 2) throw std::invalid_argument("pigeonhole k must be >= 2");
  if (static_cast<int>(set_names.size()) < k)
    throw std::invalid_argument("fewer than k sets supplied");
  PigeonholeResult out;
  Rat a = fms.measure(set_names[0]);
  for (const auto& name : set_names) a = std::min(a, fms.measure(name));
  out.min_measure = a;
  out.threshold = rat_pow(a, static_cast<unsigned>(k)) - eps;

  int n = static_cast<int>(set_names.size());
  std::vector<int> chosen;
  std::vector<BitVec> stack;
  std::function<bool(int)> dfs = [&](int from) -> bool {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int i = from; i < n; ++i) {
      ++out.nodes;
      BitVec next = chosen.empty() ? fms.set(set_names[static_cast<std::size_t>(i)])
                                   : stack.back().intersect(
                                         fms.set(set_names[static_cast<std::size_t>(i)]));
      if (fms.measure(next) < out.threshold) continue;  // monotone: no recovery
      chosen.push_back(i);
      stack.push_back(std::move(next));
      if (dfs(i + 1)) return true;
      chosen.pop_back();
      stack.pop_back();
    }
    return false;
  };
  if (dfs(0)) {
    PigeonholeSelection sel;
    sel.indices = chosen;
    sel.measure = fms.measure(stack.back());
    sel.min_measure = out.min_measure;
    sel.threshold = out.threshold;
    out.selection = std::move(sel);
  }
  return out;
}

PigeonIterResult pigeonhole_iterate(const FiniteMeasureSystem& fms,
                                    const std::string& set_name,
                                    const std::vector<std::vector<std::int64_t>>& rounds) {
  PigeonIterResult out;
  BitVec current = fms.set(set_name);
  for (std::size_t j = 0; j < rounds.size(); ++j) {
    const auto& shifts = rounds[j];
    Rat aj = fms.measure(current);
    Rat bound = aj * aj / 2;
    bool found = false;
    for (std::size_t t1 = 0; t1 < shifts.size() && !found; ++t1) {
      BitVec e1 = fms.preimage(current, shifts[t1]);
      for (std::size_t t2 = t1 + 1; t2 < shifts.size() && !found; ++t2) {
        BitVec e2 = fms.preimage(current, shifts[t2]);
        BitVec inter = e1.intersect(e2);
        Rat m = fms.measure(inter);
        if (m >= bound) {
          PigeonIterStep step;
          step.t1 = static_cast<int>(t1);
          step.t2 = static_cast<int>(t2);
          step.shift1 = shifts[t1];
          step.shift2 = shifts[t2];
          step.measure_before = aj;
          step.pair_measure = m;
          out.steps.push_back(step);
          current = current.intersect(
              fms.preimage(current, checked_sub(shifts[t2], shifts[t1])));
          found = true;
        }
      }
    }
    if (!found) {
      out.failed_round = static_cast<int>(j);
      return out;
    }
  }
  out.completed = true;
  return out;
}

CubePoint cube_sample(const SystemSpec& sys, const SystemPoint& x, int d,
                      std::span<const std::int64_t> n) {
  if (d < 1 || d > 20) throw std::invalid_argument("cube dimension out of range");
  if (static_cast<int>(n.size()) != d)
    throw std::invalid_argument("cube exponent vector arity mismatch");
  CubePoint out;
  out.d = d;
  out.entries.reserve(std::size_t{1} << d);
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
    std::int64_t e = 0;
    for (int i = 0; i < d; ++i)
      if (mask & (1u << i)) e = checked_add(e, n[static_cast<std::size_t>(i)]);
    out.entries.push_back(orbit_point(sys, x, e));
  }
  return out;
}

AAScanResult aa_scan(const SystemSpec& sys, const SystemPoint& x, int d,
                     const Rat& eps, std::span<const SystemPoint> grid,
                     const SearchBudget& budget, const WitnessOptions& opts,
                     int threads) {
  AAScanResult out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] == x) out.base_indices.push_back(i);
    RpWitnessResult r = rp_witness(sys, x, grid[i], d, eps, budget, opts, threads);
    out.per_candidate.push_back(r.search.stats);
    if (r.search.found()) {
      AAScanHit hit;
      hit.grid_index = i;
      hit.witness = *r.search.witness;
      hit.stats = r.search.stats;
      out.hits.push_back(std::move(hit));
    }
  }
  return out;
}

}  // namespace reclab
