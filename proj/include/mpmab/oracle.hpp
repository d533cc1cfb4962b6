#pragma once

#include <span>
#include <vector>

#include "mpmab/env.hpp"

namespace mpmab {

// Greedy allocator: fills arms in descending order of `values` (ties broken
// by lower index), giving each arm min(capacity, remaining plays) until all
// N plays are placed. Throws if the capacities cannot cover N.
Action greedy_oracle(std::span<const double> values, std::span<const int> capacities, int plays);

// Same fill, restricted to arms where allowed[k] is true. When the allowed
// capacities cannot absorb all plays, the overflow lands on the last allowed
// arm in fill order.
Action greedy_oracle_masked(std::span<const double> values, std::span<const int> capacities,
                            int plays, std::span<const char> allowed);

// Arm indices in descending order of value, ties by lower index.
std::vector<int> descending_order(std::span<const double> values);

}  // namespace mpmab
