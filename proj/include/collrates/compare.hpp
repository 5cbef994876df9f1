#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "collrates/aggregate.hpp"
#include "collrates/ratecalc.hpp"

namespace collrates {

// Ternary share of one transition across three databases:
// zeta_X = k_X / (k_A + k_B + k_C). Scale-invariant; sums to 1.
struct DalitzPoint {
    double zeta_a = 0.0;
    double zeta_b = 0.0;
    double zeta_c = 0.0;
};

// Throws DataError when all three rates are zero (undefined point) or any is
// negative.
DalitzPoint dalitz(double k_a, double k_b, double k_c);

// Transition keys present in every table, sorted.
std::vector<TransitionKey> match_tables(std::span<const RateTable* const> tables);

struct PercentDifference {
    double mean_pct = 0.0;  // mean of (kA - kB)/kB * 100 over matched keys
    int matched = 0;        // keys entering the mean
    int excluded = 0;       // matched keys with kB <= 0, excluded and counted
};

PercentDifference percent_difference(const RateTable& a, const RateTable& b,
                                     double temperature_k);

struct AgreementEntry {
    double temperature_k = 0.0;
    double factor = 2.0;
    int within = 0;        // keys with 1/F <= kA/kB <= F among `total`
    int total = 0;         // matched keys passing the intensity cut, kB > 0
    double mean_pct_diff = 0.0;  // over all matched keys with kB > 0 (no cut)
    int excluded = 0;
    // worst outliers by |log(kA/kB)|, descending
    std::vector<std::pair<TransitionKey, double>> worst;
};

// Agreement of table A against reference table B at one temperature.
// `intensity_threshold` keeps only kB >= threshold in the factor count (the
// "most intense transitions" cut); the mean percent difference ignores it.
AgreementEntry factor_stats(const RateTable& a, const RateTable& b, double temperature_k,
                            double factor = 2.0, double intensity_threshold = 1e-11,
                            std::size_t max_outliers = 10);

struct ScalingRow {
    int n1 = 0;
    int n1p = 0;
    double temperature_k = 0.0;
    int j2 = 0;       // projectile state index n2
    double ratio = 0.0;  // k^{n2} / k^{reference n2}
};

struct ScalingReport {
    std::vector<ScalingRow> rows;
    // transitions skipped because the reference entry is absent or zero
    std::vector<std::pair<int, int>> skipped;
};

// Effective rates of each n1 -> n1' transition relative to the same
// transition with the reference projectile state (j2 = 0 for para, 1 for
// ortho). The ratio at the reference state is exactly 1.
ScalingReport scaling_ratios(const EffectiveRateTable& eff, int reference_j2);

// Manual state-index reconciliation between databases: old index -> new
// index for each species; unmapped indices pass through unchanged.
struct StateMap {
    std::map<int, int> target;
    std::map<int, int> projectile;
};

// Remaps every key in the table; collisions after mapping raise DataError.
RateTable apply_state_map(const RateTable& table, const StateMap& map);

}  // namespace collrates
