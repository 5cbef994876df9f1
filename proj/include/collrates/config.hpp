#pragma once

#include <string>
#include <vector>

#include "collrates/constants.hpp"

namespace collrates {

// What symmetrize() does when the reverse direction of a transition is absent:
// one_sided keeps detailed balance exact by using the present direction's
// degeneracy-weighted value; require_both treats absence as an error.
enum class MissingReversePolicy { one_sided, require_both };

// Effective-rate sums over final projectile states with no data: flag the
// entry as partial, or refuse to produce it.
enum class MissingFinalPolicy { flag, strict };

// Thermal averaging over initial projectile states with no effective rate.
// `zero` reproduces the silent-zero failure mode of a public database code
// and exists for diagnostics only.
enum class MissingInitialPolicy { error, renormalize, substitute_highest, zero };

std::string to_string(MissingReversePolicy p);
std::string to_string(MissingFinalPolicy p);
std::string to_string(MissingInitialPolicy p);
MissingReversePolicy missing_reverse_policy_from_string(const std::string& s);
MissingFinalPolicy missing_final_policy_from_string(const std::string& s);
MissingInitialPolicy missing_initial_policy_from_string(const std::string& s);

struct PipelineConfig {
    // Physical constants. Overridable from file so that a run is fully
    // reproducible from its config, but the defaults are the ones to use.
    double kb_cm1_per_k = constants::kb_cm1_per_k;
    double hc_erg_cm = constants::hc_erg_cm;
    double amu_g = constants::amu_g;
    double ang2_to_cm2 = constants::ang2_to_cm2;

    double mu_u = 1.81277;  // collision reduced mass, u

    double quad_rtol = 1e-6;
    int max_refinements = 30;
    double weight_floor = 1e-4;

    MissingReversePolicy missing_reverse = MissingReversePolicy::one_sided;
    MissingFinalPolicy missing_final = MissingFinalPolicy::flag;
    MissingInitialPolicy missing_initial = MissingInitialPolicy::error;

    std::vector<double> temps_k = {100.0, 500.0, 1000.0, 1500.0};

    // Projectile levels (by index) eligible for effective-rate completeness
    // checks and thermal averaging. Empty means every level in the list.
    std::vector<int> included_j2;

    // Throws ConfigError on out-of-range tolerances or a bad temperature grid.
    void validate() const;
};

}  // namespace collrates
