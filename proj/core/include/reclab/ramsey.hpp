#pragma once

#include <functional>
#include <optional>
#include <string>

#include "reclab/descriptor.hpp"
#include "reclab/witness.hpp"

namespace reclab {

// A window whose members each carry exactly one class tag.
struct LabeledWindow {
  IntegerWindow window;
  std::vector<std::string> labels;  // parallel to window.members()
};

// Subset-sum representation of a value over a super-lacunary P.
struct Representation {
  std::int64_t value = 0;
  std::vector<int> indices;  // 0-based positions into P, strictly ascending
};

// Greedy from the largest term; unique when P is super-lacunary. None when
// the residual is nonzero. Throws unless the growth condition verifies.
std::optional<Representation> unique_representation(const SequenceSpec& p,
                                                    std::int64_t m);

// The three-way split of SG_2(P) ∩ [lo, hi]: all representation indices in
// odd positions (1-based) -> "B1", all even -> "B2", mixed -> "B0". A random
// 1% sample is re-classified against the definitional route (membership in
// SG_1 of the odd/even subsequences) on every call.
LabeledWindow partition_sg2(const SequenceSpec& p, std::int64_t lo, std::int64_t hi,
                            std::uint64_t spot_check_seed = 1);

struct MonochromaticTriple {
  std::int64_t a1 = 0, a2 = 0, a3 = 0;
  std::string label;
};

// First triple a1 < a2 < a3 (ascending lexicographic) whose six values
// a1, a2, a3, a1+a2, a1+a3, a2+a3 are pairwise distinct members sharing one
// label. Triples with any sum outside the window are skipped and counted;
// triples with a3 == a1+a2 are counted as degenerate, never reported.
struct TripleSearchResult {
  std::optional<MonochromaticTriple> triple;
  std::int64_t truncated = 0;
  std::int64_t degenerate = 0;
  std::int64_t checked = 0;
  bool node_limited = false;
};

TripleSearchResult find_monochromatic_triple(const LabeledWindow& lw,
                                             std::int64_t max_nodes = std::int64_t{1}
                                                                      << 40);

using LabelFn = std::function<std::string(std::int64_t)>;

LabelFn label_single_class();
LabelFn label_value_parity();
LabelFn label_mod_class(std::int64_t modulus);

LabeledWindow label_window(const IntegerWindow& w, const LabelFn& fn);

// Partition-regularity probe: searches each class of the partitioned window
// for the family's witness structure.
struct RamseyClassOutcome {
  std::string label;
  std::int64_t class_size = 0;
  std::optional<TripleSearchResult> triple;   // triple mode
  std::optional<WitnessResult> fs;            // fs mode
};

struct RamseyExperimentResult {
  std::vector<RamseyClassOutcome> classes;  // sorted by label
};

// witness_fs_length == 0 selects triple search; > 0 selects an FS-structure
// search of that length within each class.
RamseyExperimentResult ramsey_experiment(const SetDescriptor& s, const LabelFn& fn,
                                         std::int64_t lo, std::int64_t hi,
                                         int witness_fs_length,
                                         const SearchBudget& budget);

}  // namespace reclab
