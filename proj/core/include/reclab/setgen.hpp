#pragma once

#include "reclab/sequence.hpp"
#include "reclab/window.hpp"

namespace reclab {

// |P| beyond this would blow 2^n generation; callers get a loud budget_error.
inline constexpr std::size_t kMaxGeneratorLength = 24;

// All sums over nonempty index subsets of P, deduplicated; housed on the
// interval spanned by the sums.
IntegerWindow generate_fs(const SequenceSpec& p);

// Sums over nonempty index subsets i_1 < ... < i_k with i_{t+1} - i_t <= d:
// interior blocks of skipped indices shorter than d, leading and trailing
// skips unconstrained. d >= |P| - 1 reproduces generate_fs.
IntegerWindow generate_sg(const SequenceSpec& p, int d);

}  // namespace reclab
