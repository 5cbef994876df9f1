#include "collrates/compare.hpp"

#include <algorithm>
#include <cmath>

#include "collrates/errors.hpp"

namespace collrates {

DalitzPoint dalitz(double k_a, double k_b, double k_c) {
    if (k_a < 0 || k_b < 0 || k_c < 0) throw DataError("negative rate in Dalitz coordinates");
    const double sum = k_a + k_b + k_c;
    if (sum == 0) throw DataError("undefined Dalitz point: all three rates are zero");
    return {k_a / sum, k_b / sum, k_c / sum};
}

std::vector<TransitionKey> match_tables(std::span<const RateTable* const> tables) {
    std::vector<TransitionKey> matched;
    if (tables.empty()) return matched;
    for (const auto& entry : tables.front()->entries) {
        const TransitionKey& key = entry.first;
        const bool everywhere = std::all_of(tables.begin() + 1, tables.end(),
                                            [&key](const RateTable* t) {
                                                return t->entries.count(key) > 0;
                                            });
        if (everywhere) matched.push_back(key);
    }
    return matched;  // map order: already sorted
}

namespace {

std::size_t temperature_index(const RateTable& table, double temperature_k) {
    const auto it = std::find(table.temps_k.begin(), table.temps_k.end(), temperature_k);
    if (it == table.temps_k.end())
        throw DataError("temperature " + std::to_string(temperature_k) +
                        " K not present in rate table");
    return static_cast<std::size_t>(it - table.temps_k.begin());
}

}  // namespace

PercentDifference percent_difference(const RateTable& a, const RateTable& b,
                                     double temperature_k) {
    const std::size_t ta = temperature_index(a, temperature_k);
    const std::size_t tb = temperature_index(b, temperature_k);
    const RateTable* tables[] = {&a, &b};
    PercentDifference out;
    double sum = 0.0;
    for (const TransitionKey& key : match_tables(tables)) {
        const double ka = a.entries.at(key)[ta];
        const double kb = b.entries.at(key)[tb];
        if (kb <= 0) {
            ++out.excluded;
            continue;
        }
        sum += (ka - kb) / kb * 100.0;
        ++out.matched;
    }
    if (out.matched > 0) out.mean_pct = sum / out.matched;
    return out;
}

AgreementEntry factor_stats(const RateTable& a, const RateTable& b, double temperature_k,
                            double factor, double intensity_threshold,
                            std::size_t max_outliers) {
    if (factor <= 1.0) throw ConfigError("agreement factor must exceed 1");
    const std::size_t ta = temperature_index(a, temperature_k);
    const std::size_t tb = temperature_index(b, temperature_k);
    const RateTable* tables[] = {&a, &b};

    AgreementEntry out;
    out.temperature_k = temperature_k;
    out.factor = factor;
    double sum = 0.0;
    int n_mean = 0;
    std::vector<std::pair<TransitionKey, double>> ratios;
    for (const TransitionKey& key : match_tables(tables)) {
        const double ka = a.entries.at(key)[ta];
        const double kb = b.entries.at(key)[tb];
        if (kb <= 0) {
            ++out.excluded;
            continue;
        }
        sum += (ka - kb) / kb * 100.0;
        ++n_mean;
        if (kb < intensity_threshold) continue;
        ++out.total;
        const double ratio = ka / kb;
        if (ratio >= 1.0 / factor && ratio <= factor) ++out.within;
        ratios.emplace_back(key, ratio);
    }
    if (n_mean > 0) out.mean_pct_diff = sum / n_mean;
    std::sort(ratios.begin(), ratios.end(), [](const auto& x, const auto& y) {
        const double lx = std::abs(std::log(x.second));
        const double ly = std::abs(std::log(y.second));
        return lx != ly ? lx > ly : x.first < y.first;
    });
    if (ratios.size() > max_outliers) ratios.resize(max_outliers);
    out.worst = std::move(ratios);
    return out;
}

ScalingReport scaling_ratios(const EffectiveRateTable& eff, int reference_j2) {
    ScalingReport report;
    // group entries by target transition
    std::map<std::pair<int, int>, std::map<int, const EffectiveEntry*>> groups;
    for (const auto& [key, entry] : eff.entries) groups[{key.n1, key.n1p}][key.n2] = &entry;

    for (const auto& [n1n1p, by_n2] : groups) {
        const auto ref = by_n2.find(reference_j2);
        const bool ref_usable =
            ref != by_n2.end() &&
            std::all_of(ref->second->rates.begin(), ref->second->rates.end(),
                        [](double k) { return k > 0; });
        if (!ref_usable) {
            report.skipped.push_back(n1n1p);
            continue;
        }
        for (const auto& [n2, entry] : by_n2) {
            for (std::size_t t = 0; t < eff.temps_k.size(); ++t) {
                ScalingRow row;
                row.n1 = n1n1p.first;
                row.n1p = n1n1p.second;
                row.temperature_k = eff.temps_k[t];
                row.j2 = n2;
                row.ratio = n2 == reference_j2 ? 1.0 : entry->rates[t] / ref->second->rates[t];
                report.rows.push_back(row);
            }
        }
    }
    return report;
}

RateTable apply_state_map(const RateTable& table, const StateMap& map) {
    const auto remap = [](const std::map<int, int>& m, int idx) {
        const auto it = m.find(idx);
        return it == m.end() ? idx : it->second;
    };
    RateTable out;
    out.temps_k = table.temps_k;
    for (const auto& [key, rates] : table.entries) {
        TransitionKey mapped;
        mapped.initial = {remap(map.target, key.initial.n1), remap(map.projectile, key.initial.n2)};
        mapped.final = {remap(map.target, key.final.n1), remap(map.projectile, key.final.n2)};
        if (!out.entries.emplace(mapped, rates).second)
            throw DataError("state map collides on transition " + to_string(mapped));
    }
    return out;
}

}  // namespace collrates
