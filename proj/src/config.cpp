#include "collrates/config.hpp"

#include "collrates/errors.hpp"

namespace collrates {

std::string to_string(MissingReversePolicy p) {
    switch (p) {
        case MissingReversePolicy::one_sided: return "one-sided";
        case MissingReversePolicy::require_both: return "require-both";
    }
    return "?";
}

std::string to_string(MissingFinalPolicy p) {
    switch (p) {
        case MissingFinalPolicy::flag: return "flag";
        case MissingFinalPolicy::strict: return "strict";
    }
    return "?";
}

std::string to_string(MissingInitialPolicy p) {
    switch (p) {
        case MissingInitialPolicy::error: return "error";
        case MissingInitialPolicy::renormalize: return "renormalize";
        case MissingInitialPolicy::substitute_highest: return "substitute-highest";
        case MissingInitialPolicy::zero: return "zero";
    }
    return "?";
}

MissingReversePolicy missing_reverse_policy_from_string(const std::string& s) {
    if (s == "one-sided") return MissingReversePolicy::one_sided;
    if (s == "require-both") return MissingReversePolicy::require_both;
    throw ConfigError("unknown missing-reverse policy '" + s + "'");
}

MissingFinalPolicy missing_final_policy_from_string(const std::string& s) {
    if (s == "flag") return MissingFinalPolicy::flag;
    if (s == "strict") return MissingFinalPolicy::strict;
    throw ConfigError("unknown missing-final policy '" + s + "'");
}

MissingInitialPolicy missing_initial_policy_from_string(const std::string& s) {
    if (s == "error") return MissingInitialPolicy::error;
    if (s == "renormalize") return MissingInitialPolicy::renormalize;
    if (s == "substitute-highest") return MissingInitialPolicy::substitute_highest;
    if (s == "zero") return MissingInitialPolicy::zero;
    throw ConfigError("unknown missing-initial policy '" + s + "'");
}

void PipelineConfig::validate() const {
    if (kb_cm1_per_k <= 0 || hc_erg_cm <= 0 || amu_g <= 0 || ang2_to_cm2 <= 0)
        throw ConfigError("physical constants must be positive");
    if (mu_u <= 0) throw ConfigError("reduced mass mu_u must be positive");
    if (!(quad_rtol > 0 && quad_rtol < 1))
        throw ConfigError("quad_rtol must lie in (0, 1)");
    if (!(weight_floor > 0 && weight_floor < 1))
        throw ConfigError("weight_floor must lie in (0, 1)");
    if (max_refinements < 1) throw ConfigError("max_refinements must be >= 1");
    if (temps_k.empty()) throw ConfigError("temperature grid is empty");
    for (std::size_t i = 0; i < temps_k.size(); ++i) {
        if (temps_k[i] <= 0) throw ConfigError("temperatures must be positive");
        if (i > 0 && temps_k[i] <= temps_k[i - 1])
            throw ConfigError("temperature grid must be strictly increasing");
    }
    for (int idx : included_j2)
        if (idx < 0) throw ConfigError("included_j2 entries must be >= 0");
}

}  // namespace collrates
