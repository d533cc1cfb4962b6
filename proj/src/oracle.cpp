#include "mpmab/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mpmab {

std::vector<int> descending_order(std::span<const double> values) {
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return values[static_cast<std::size_t>(a)] > values[static_cast<std::size_t>(b)];
    });
    return order;
}

Action greedy_oracle(std::span<const double> values, std::span<const int> capacities, int plays) {
    if (values.size() != capacities.size())
        throw std::invalid_argument("oracle: values and capacities must have equal length");
    long long total = 0;
    for (int c : capacities) total += c;
    if (total < plays)
        throw std::invalid_argument("oracle: total capacity cannot cover the requested plays");

    Action action;
    action.counts.assign(values.size(), 0);
    int remaining = plays;
    for (int k : descending_order(values)) {
        const int take = std::min(remaining, capacities[static_cast<std::size_t>(k)]);
        action.counts[static_cast<std::size_t>(k)] = take;
        remaining -= take;
        if (remaining == 0) break;
    }
    return action;
}

Action greedy_oracle_masked(std::span<const double> values, std::span<const int> capacities,
                            int plays, std::span<const char> allowed) {
    Action action;
    action.counts.assign(values.size(), 0);
    int remaining = plays;
    int last_allowed = -1;
    for (int k : descending_order(values)) {
        if (!allowed[static_cast<std::size_t>(k)]) continue;
        last_allowed = k;
        if (remaining == 0) continue;
        const int take = std::min(remaining, capacities[static_cast<std::size_t>(k)]);
        action.counts[static_cast<std::size_t>(k)] = take;
        remaining -= take;
    }
    if (remaining > 0) {
        if (last_allowed < 0) throw std::invalid_argument("oracle: no arm available for plays");
        action.counts[static_cast<std::size_t>(last_allowed)] += remaining;
    }
    return action;
}

}  // namespace mpmab
