#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpmab/env.hpp"

namespace mpmab {

// log T scaled theoretical regret curves for one environment: the
// information-theoretic lower bound and the asymptotic upper bound of the
// orchestrated-exploration algorithm. For Bernoulli rewards the lower bound
// keeps only its mean-discrimination term (the capacity terms are only
// established for Gaussian rewards).
struct BoundCurves {
    double lower_coefficient = 0.0;
    double upper_coefficient = 0.0;
    std::vector<std::int64_t> horizon_grid;
    std::vector<double> lower;  // lower_coefficient * log T per grid point
    std::vector<double> upper;
};

BoundCurves theoretical_curves(const Environment& env, double variance,
                               std::span<const std::int64_t> horizon_grid);

}  // namespace mpmab
