#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "collrates/config.hpp"
#include "collrates/ratecalc.hpp"
#include "collrates/states.hpp"

namespace collrates {

// Target transition n1 -> n1' for a fixed initial projectile state n2.
struct EffectiveKey {
    int n1 = 0;
    int n1p = 0;
    int n2 = 0;
    auto operator<=>(const EffectiveKey&) const = default;
};

struct EffectiveEntry {
    std::vector<double> rates;    // cm^3/s per T
    bool complete = true;
    std::vector<int> missing_n2p;  // expected final projectile states with no data
};

struct EffectiveRateTable {
    std::vector<double> temps_k;
    std::map<EffectiveKey, EffectiveEntry> entries;
    std::optional<LevelList> projectile;
};

// Sum of state-to-state rates over final projectile states n2' for each
// (n1 -> n1', n2). Expected n2' are the projectile levels sharing n2's
// ortho/para symmetry (spin symmetry is conserved), restricted to
// cfg.included_j2 when set. Missing expected n2' mark the entry partial
// (policy flag) or raise DataError naming the transition (policy strict).
// Accumulation is in key order, so the result is independent of entry order.
EffectiveRateTable effective_rates(const RateTable& rates, const LevelList& projectile,
                                   MissingFinalPolicy policy, const PipelineConfig& cfg = {});

// Q(T) = sum over levels of the requested symmetry of (2j+1) exp(-E/kBT).
// Throws DataError when the list has no level of that symmetry.
double partition_function(const LevelList& projectile, Symmetry symmetry, double temperature_k,
                          const PipelineConfig& cfg = {});

struct ThermalKey {
    int n1 = 0;
    int n1p = 0;
    Symmetry symmetry = Symmetry::para;
    auto operator<=>(const ThermalKey&) const = default;
};

struct ThermalEntry {
    std::vector<double> rates;        // cm^3/s per T
    std::vector<int> contributing_n2;  // states whose weight entered the average
    // weights[i][t] for contributing_n2[i] at temps_k[t]; each column sums to 1.
    std::vector<std::vector<double>> weights;
};

struct ThermalRateTable {
    std::vector<double> temps_k;
    std::map<ThermalKey, ThermalEntry> entries;
};

// Boltzmann average of effective rates over initial projectile states of one
// symmetry: k~ = sum_n2 w_n2 k^{n2}, w_n2 = (2j2+1) exp(-E2/kBT)/Q(T).
// Policies for eligible n2 with no effective rate:
//   error              — abort with a named diagnostic if the missing state's
//                        weight exceeds cfg.weight_floor (lighter states are
//                        dropped and the remaining weights renormalized);
//   renormalize        — restrict Q to available n2;
//   substitute_highest — borrow the rate of the highest available n2;
//   zero               — count the weight, contribute nothing (diagnostic
//                        reproduction of the underestimation bug).
ThermalRateTable thermal_rates(const EffectiveRateTable& eff, const LevelList& projectile,
                               Symmetry symmetry, const std::vector<double>& temps_k,
                               MissingInitialPolicy policy, const PipelineConfig& cfg = {});

// Same average with user-supplied temperature-independent weights keyed by
// n2 (non-LTE distributions). Weights are renormalized over the eligible set.
ThermalRateTable thermal_rates_custom(const EffectiveRateTable& eff,
                                      const std::map<int, double>& weights_by_n2,
                                      Symmetry symmetry, const LevelList& projectile,
                                      const std::vector<double>& temps_k,
                                      MissingInitialPolicy policy, const PipelineConfig& cfg = {});

}  // namespace collrates
