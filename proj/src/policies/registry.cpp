#include "mpmab/policies/registry.hpp"

#include <algorithm>
#include <stdexcept>

#include "mpmab/policies/etcucb.hpp"
#include "mpmab/policies/flat.hpp"
#include "mpmab/policies/kc_baselines.hpp"
#include "mpmab/policies/mpsesa.hpp"
#include "mpmab/policies/orchexplore.hpp"

namespace mpmab {

std::vector<std::string> registered_policies() {
    return {"orchexplore", "orchexplore_kc", "mpsesa", "mpsesa_kc", "mpse",   "etcucb",
            "klucb_kc",    "thompson_kc",    "se_kc",  "ucb_flat",  "ts_flat", "se_flat",
            "optimal"};
}

bool is_registered_policy(const std::string& name) {
    const auto names = registered_policies();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool policy_uses_true_capacities(const std::string& name) {
    return name == "orchexplore_kc" || name == "mpsesa_kc" || name == "klucb_kc" ||
           name == "thompson_kc" || name == "se_kc" || name == "optimal";
}

std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyContext& ctx,
                                    const PolicyParams& params) {
    if (name == "orchexplore") {
        PolicyContext blind = ctx;
        blind.known_capacities.clear();
        return std::make_unique<OrchExplore>(blind, params);
    }
    if (name == "orchexplore_kc") return std::make_unique<OrchExplore>(ctx, params);
    if (name == "mpsesa") {
        PolicyContext blind = ctx;
        blind.known_capacities.clear();
        return std::make_unique<MpSeSa>(blind, params, MpSeSa::Mode::Adaptive);
    }
    if (name == "mpsesa_kc") return std::make_unique<MpSeSa>(ctx, params, MpSeSa::Mode::KnownCapacity);
    if (name == "mpse") return std::make_unique<MpSeSa>(ctx, params, MpSeSa::Mode::UnitCapacity);
    if (name == "etcucb") return std::make_unique<EtcUcb>(ctx, params);
    if (name == "klucb_kc") return std::make_unique<KlUcbKc>(ctx, params);
    if (name == "thompson_kc") return std::make_unique<ThompsonKc>(ctx, params);
    if (name == "se_kc") return std::make_unique<SeKc>(ctx, params);
    if (name == "ucb_flat") return std::make_unique<UcbFlat>(ctx, params);
    if (name == "ts_flat") return std::make_unique<TsFlat>(ctx, params);
    if (name == "se_flat") return std::make_unique<SeFlat>(ctx, params);
    if (name == "optimal") return std::make_unique<OptimalPolicy>(ctx);

    std::string known;
    for (const auto& p : registered_policies()) {
        if (!known.empty()) known += ", ";
        known += p;
    }
    throw std::invalid_argument("unknown policy '" + name + "'; registered policies: " + known);
}

}  // namespace mpmab
