#include "collrates/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "collrates/errors.hpp"

namespace collrates {

namespace {

std::string transition_name(int n1, int n1p, int n2) {
    std::ostringstream os;
    os << n1 << "->" << n1p << " (n2=" << n2 << ")";
    return os.str();
}

// Indices eligible for projectile sums/averages: requested symmetry,
// restricted to cfg.included_j2 when that is non-empty.
std::vector<int> eligible_projectile(const LevelList& projectile, Symmetry symmetry,
                                     const PipelineConfig& cfg) {
    std::set<int> included(cfg.included_j2.begin(), cfg.included_j2.end());
    std::vector<int> out;
    for (const Level& lev : projectile.levels()) {
        if (!included.empty() && !included.count(lev.index)) continue;
        if (classify_symmetry(lev, projectile.species()) == symmetry) out.push_back(lev.index);
    }
    return out;
}

}  // namespace

EffectiveRateTable effective_rates(const RateTable& rates, const LevelList& projectile,
                                   MissingFinalPolicy policy, const PipelineConfig& cfg) {
    EffectiveRateTable out;
    out.temps_k = rates.temps_k;
    out.projectile = projectile;

    const std::size_t nt = rates.temps_k.size();
    std::map<EffectiveKey, std::set<int>> seen_n2p;
    for (const auto& [key, k] : rates.entries) {
        if (k.size() != nt) throw DataError("rate row length mismatch for " + to_string(key));
        const EffectiveKey ekey{key.initial.n1, key.final.n1, key.initial.n2};
        auto& entry = out.entries[ekey];
        if (entry.rates.empty()) entry.rates.assign(nt, 0.0);
        for (std::size_t t = 0; t < nt; ++t) entry.rates[t] += k[t];
        seen_n2p[ekey].insert(key.final.n2);
    }

    for (auto& [ekey, entry] : out.entries) {
        const Symmetry sym = projectile.symmetry_of(ekey.n2);
        const auto& seen = seen_n2p[ekey];
        for (int n2p : eligible_projectile(projectile, sym, cfg))
            if (!seen.count(n2p)) entry.missing_n2p.push_back(n2p);
        entry.complete = entry.missing_n2p.empty();
        if (!entry.complete && policy == MissingFinalPolicy::strict) {
            std::ostringstream os;
            os << "incomplete data for " << transition_name(ekey.n1, ekey.n1p, ekey.n2)
               << ": no rates into projectile state(s)";
            for (int m : entry.missing_n2p) os << " " << m;
            throw DataError(os.str());
        }
    }
    return out;
}

double partition_function(const LevelList& projectile, Symmetry symmetry, double temperature_k,
                          const PipelineConfig& cfg) {
    if (temperature_k <= 0) throw ConfigError("temperature must be positive");
    const double kbt = cfg.kb_cm1_per_k * temperature_k;
    double q = 0.0;
    bool any = false;
    for (const Level& lev : projectile.levels()) {
        if (classify_symmetry(lev, projectile.species()) != symmetry) continue;
        q += lev.degeneracy() * std::exp(-lev.energy_cm1 / kbt);
        any = true;
    }
    if (!any)
        throw DataError("no " + to_string(symmetry) + " levels in the projectile list");
    return q;
}

namespace {

// Shared averaging engine. `term(n2, t)` is the unnormalized weight of
// projectile state n2 at temps[t] (Boltzmann or user-supplied).
ThermalRateTable thermal_engine(const EffectiveRateTable& eff, Symmetry symmetry,
                                const std::vector<int>& eligible,
                                const std::vector<double>& temps_k, MissingInitialPolicy policy,
                                const PipelineConfig& cfg,
                                const std::function<double(int, std::size_t)>& term) {
    if (eff.entries.empty()) throw DataError("effective-rate table is empty");
    if (temps_k.empty()) throw ConfigError("temperature list is empty");
    if (eligible.empty())
        throw DataError("no eligible " + to_string(symmetry) + " projectile states");

    // Map requested temperatures onto the effective table's grid.
    std::vector<std::size_t> tidx(temps_k.size());
    for (std::size_t t = 0; t < temps_k.size(); ++t) {
        const auto it = std::find(eff.temps_k.begin(), eff.temps_k.end(), temps_k[t]);
        if (it == eff.temps_k.end())
            throw DataError("temperature " + std::to_string(temps_k[t]) +
                            " K not present in the effective-rate table");
        tidx[t] = static_cast<std::size_t>(it - eff.temps_k.begin());
    }

    std::map<std::pair<int, int>, std::map<int, const EffectiveEntry*>> groups;
    for (const auto& [key, entry] : eff.entries) groups[{key.n1, key.n1p}][key.n2] = &entry;

    ThermalRateTable out;
    out.temps_k = temps_k;

    for (const auto& [n1n1p, by_n2] : groups) {
        std::vector<int> available;
        for (int n2 : eligible)
            if (by_n2.count(n2)) available.push_back(n2);
        if (available.empty()) continue;  // transition has no data in this manifold

        const bool full_set = policy == MissingInitialPolicy::substitute_highest ||
                              policy == MissingInitialPolicy::zero;
        const std::vector<int>& contributing = full_set ? eligible : available;

        ThermalEntry entry;
        entry.contributing_n2 = contributing;
        entry.weights.assign(contributing.size(), std::vector<double>(temps_k.size(), 0.0));
        entry.rates.assign(temps_k.size(), 0.0);

        for (std::size_t t = 0; t < temps_k.size(); ++t) {
            double q_eligible = 0.0;
            for (int n2 : eligible) q_eligible += term(n2, t);
            if (q_eligible <= 0)
                throw DataError("projectile weights vanish at T = " +
                                std::to_string(temps_k[t]) + " K");

            if (policy == MissingInitialPolicy::error) {
                for (int n2 : eligible) {
                    if (by_n2.count(n2)) continue;
                    const double w = term(n2, t) / q_eligible;
                    if (w > cfg.weight_floor) {
                        std::ostringstream os;
                        os << "missing effective rate for "
                           << transition_name(n1n1p.first, n1n1p.second, n2)
                           << " with equilibrium weight " << w << " > weight_floor at T = "
                           << temps_k[t] << " K";
                        throw DataError(os.str());
                    }
                }
            }

            double q_contrib = 0.0;
            for (int n2 : contributing) q_contrib += term(n2, t);
            const int highest = available.back();
            for (std::size_t i = 0; i < contributing.size(); ++i) {
                const int n2 = contributing[i];
                const double w = term(n2, t) / q_contrib;
                entry.weights[i][t] = w;
                const auto it = by_n2.find(n2);
                double k = 0.0;
                if (it != by_n2.end())
                    k = it->second->rates[tidx[t]];
                else if (policy == MissingInitialPolicy::substitute_highest)
                    k = by_n2.at(highest)->rates[tidx[t]];
                entry.rates[t] += w * k;
            }
        }
        out.entries.emplace(ThermalKey{n1n1p.first, n1n1p.second, symmetry}, std::move(entry));
    }
    return out;
}

}  // namespace

ThermalRateTable thermal_rates(const EffectiveRateTable& eff, const LevelList& projectile,
                               Symmetry symmetry, const std::vector<double>& temps_k,
                               MissingInitialPolicy policy, const PipelineConfig& cfg) {
    cfg.validate();
    for (double t : temps_k)
        if (t <= 0) throw ConfigError("temperatures must be positive");
    const std::vector<int> eligible = eligible_projectile(projectile, symmetry, cfg);
    return thermal_engine(eff, symmetry, eligible, temps_k, policy, cfg,
                          [&](int n2, std::size_t t) {
                              const Level& lev = projectile.at(n2);
                              const double kbt = cfg.kb_cm1_per_k * temps_k[t];
                              return lev.degeneracy() * std::exp(-lev.energy_cm1 / kbt);
                          });
}

ThermalRateTable thermal_rates_custom(const EffectiveRateTable& eff,
                                      const std::map<int, double>& weights_by_n2,
                                      Symmetry symmetry, const LevelList& projectile,
                                      const std::vector<double>& temps_k,
                                      MissingInitialPolicy policy, const PipelineConfig& cfg) {
    cfg.validate();
    for (const auto& [n2, w] : weights_by_n2) {
        projectile.at(n2);
        if (w < 0) throw DataError("negative weight for projectile state " + std::to_string(n2));
    }
    std::vector<int> eligible;
    for (int n2 : eligible_projectile(projectile, symmetry, cfg)) {
        const auto it = weights_by_n2.find(n2);
        if (it != weights_by_n2.end() && it->second > 0) eligible.push_back(n2);
    }
    return thermal_engine(eff, symmetry, eligible, temps_k, policy, cfg,
                          [&](int n2, std::size_t) { return weights_by_n2.at(n2); });
}

}  // namespace collrates
