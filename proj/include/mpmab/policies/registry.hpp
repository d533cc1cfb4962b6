#pragma once

#include <memory>
#include <string>
#include <vector>

#include "mpmab/policy.hpp"

namespace mpmab {

// Names accepted by make_policy, in presentation order.
std::vector<std::string> registered_policies();

bool is_registered_policy(const std::string& name);

// Builds a policy by name. Throws std::invalid_argument for unknown names
// (message lists the registry) and PolicyInfeasible when the instance cannot
// be run. Known-capacity and clairvoyant policies read the true values from
// the context; the harness fills those in.
std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyContext& ctx,
                                    const PolicyParams& params);

// Whether the policy needs ctx.known_capacities (and for "optimal" also
// ctx.known_means) populated.
bool policy_uses_true_capacities(const std::string& name);

}  // namespace mpmab
