#pragma once

#include <functional>
#include <optional>

#include "reclab/descriptor.hpp"
#include "reclab/measure.hpp"

namespace reclab {

// Entry regimes. The default searches for nontrivial certificates: strictly
// increasing positive entries, pairwise-distinct subset sums, and pairwise
// entry differences that also lie in the target.
struct WitnessOptions {
  bool allow_zero = false;
  bool allow_negative = false;
  bool allow_repeats = false;
  bool require_distinct_sums = true;
  bool require_gaps_in_target = true;

  friend bool operator==(const WitnessOptions&, const WitnessOptions&) = default;
};

// All 2^d - 1 subset sums of entries, indexed by subset bitmask - 1
// (bit i of the mask selects entries[i]).
std::vector<std::int64_t> fs_sums(std::span<const std::int64_t> entries);

struct FSWitness {
  std::vector<std::int64_t> entries;  // ascending in the default regime
  std::optional<std::int64_t> base;
  std::vector<std::int64_t> sums;  // fs_sums(entries), frozen at search time
  WitnessOptions options;
};

// Re-derives the sums from the entries and checks every one (shifted by base
// when present) for membership; independent of the search path.
bool verify_fs_witness(const IntegerWindow& target, const FSWitness& w,
                       std::string* why = nullptr);

enum class ExhaustionReason : std::uint8_t { SpaceExhausted, NodeLimit, CandidateLimit };
const char* to_string(ExhaustionReason r);

struct SearchBudget {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t max_candidates_per_level = std::int64_t{1} << 32;
  std::int64_t max_nodes = std::int64_t{1} << 32;
};

struct SearchStats {
  std::int64_t nodes = 0;             // partial witnesses expanded
  std::int64_t candidates = 0;        // candidate values examined
  std::optional<ExhaustionReason> exhausted;  // set iff no witness was found
};

struct WitnessResult {
  std::optional<FSWitness> witness;
  SearchStats stats;
  bool found() const { return witness.has_value(); }
};

// Depth-first search for d entries whose subset sums all lie in target,
// ascending candidate order throughout. Exhausted is a value, not an error,
// and never claims anything beyond the searched window.
WitnessResult find_fs_witness(const IntegerWindow& target, int d,
                              const SearchBudget& budget,
                              const WitnessOptions& opts = {});

// Certificate search for the order-d regional-proximality criterion at scale
// eps: a finite IP set of length d+1 inside N(x, Ball(y, eps)).
struct RpWitnessResult {
  WitnessResult search;
  std::int64_t target_size = 0;
  std::int64_t boundary_count = 0;  // guard-band indices, excluded from the target
};
RpWitnessResult rp_witness(const SystemSpec& sys, const SystemPoint& x,
                           const SystemPoint& y, int d, const Rat& eps,
                           const SearchBudget& budget, const WitnessOptions& opts = {},
                           int threads = 1);

struct SgContainmentResult {
  enum class Status : std::uint8_t { Contained, Counterexample, WindowTruncated };
  Status status = Status::Contained;
  std::optional<std::int64_t> counterexample;  // first failing sum, ascending
  std::int64_t out_of_window = 0;
  std::int64_t checked = 0;
};
SgContainmentResult check_sg_containment(const SequenceSpec& p, int d,
                                         const SetDescriptor& target,
                                         std::int64_t lo, std::int64_t hi,
                                         int threads = 1);

// Entries with FS ⊆ p plus a base a in f with {a} ∪ (a + FS) ⊆ f.
WitnessResult intersective_witness(const IntegerWindow& p, const IntegerWindow& f,
                                   int d, const SearchBudget& budget,
                                   const WitnessOptions& opts = {});

// FS(entries) ⊆ p with exact positive measure of A ∩ ⋂ T^{-s}A.
struct PoincareResult {
  WitnessResult search;
  std::optional<Rat> measure;
};
PoincareResult poincare_order_witness(const IntegerWindow& p,
                                      const FiniteMeasureSystem& fms,
                                      const std::string& set_name, int d,
                                      const SearchBudget& budget,
                                      const WitnessOptions& opts = {});

// FS(entries) ⊆ p with U ∩ ⋂ T^{-s}U nonempty.
struct BirkhoffResult {
  WitnessResult search;
  std::int64_t intersection_size = 0;
};
BirkhoffResult birkhoff_order_witness(const IntegerWindow& p,
                                      const FiniteMeasureSystem& fms,
                                      const std::string& open_set_name, int d,
                                      const SearchBudget& budget,
                                      const WitnessOptions& opts = {});

// First k-subset (lexicographic) of the named sets whose intersection has
// measure >= a^k - eps, a the minimum single-set measure; branch-and-bound
// over partial intersections.
struct PigeonholeSelection {
  std::vector<int> indices;  // 0-based into the supplied name list
  Rat measure;
  Rat min_measure;
  Rat threshold;
};
struct PigeonholeResult {
  std::optional<PigeonholeSelection> selection;
  Rat min_measure;
  Rat threshold;
  std::int64_t nodes = 0;
};
PigeonholeResult pigeonhole_select(const FiniteMeasureSystem& fms,
                                   std::span<const std::string> set_names, int k,
                                   const Rat& eps);

// The iterative pairwise mode: each round picks the first pair of shifted
// copies of the running set with measure >= a_j^2 / 2, then replaces the set
// by A_j ∩ T^{-(shift difference)} A_j.
struct PigeonIterStep {
  int t1 = 0, t2 = 0;
  std::int64_t shift1 = 0, shift2 = 0;
  Rat measure_before;
  Rat pair_measure;
};
struct PigeonIterResult {
  std::vector<PigeonIterStep> steps;
  bool completed = false;
  int failed_round = -1;
};
PigeonIterResult pigeonhole_iterate(const FiniteMeasureSystem& fms,
                                    const std::string& set_name,
                                    const std::vector<std::vector<std::int64_t>>& rounds);

// Vertices of the dynamical parallelepiped spanned by n: entries[mask] is
// T^{n·eps} x where bit i of mask is eps_{i+1}; entries[0] is x itself.
struct CubePoint {
  int d = 0;
  std::vector<SystemPoint> entries;
};
CubePoint cube_sample(const SystemSpec& sys, const SystemPoint& x, int d,
                      std::span<const std::int64_t> n);

// Runs rp_witness against every grid candidate. A candidate with a witness is
// evidence against x being d-step almost automorphic at this scale; an empty
// hit list is consistency only, never proof.
struct AAScanHit {
  std::size_t grid_index = 0;
  FSWitness witness;
  SearchStats stats;
};
struct AAScanResult {
  std::vector<AAScanHit> hits;
  std::vector<std::size_t> base_indices;  // grid points equal to x
  std::vector<SearchStats> per_candidate;
};
AAScanResult aa_scan(const SystemSpec& sys, const SystemPoint& x, int d,
                     const Rat& eps, std::span<const SystemPoint> grid,
                     const SearchBudget& budget, const WitnessOptions& opts = {},
                     int threads = 1);

}  // namespace reclab
