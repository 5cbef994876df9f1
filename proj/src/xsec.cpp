#include "collrates/xsec.hpp"

#include <algorithm>

#include "collrates/errors.hpp"

namespace collrates {

std::string to_string(const TransitionKey& key) {
    return std::to_string(key.initial.n1) + ":" + std::to_string(key.initial.n2) + "->" +
           std::to_string(key.final.n1) + ":" + std::to_string(key.final.n2);
}

EnergyGrid::EnergyGrid(std::vector<double> u_cm1) : u_(std::move(u_cm1)) {
    if (u_.size() < 2) throw DataError("energy grid needs at least 2 points");
    for (std::size_t i = 0; i < u_.size(); ++i) {
        if (!std::isfinite(u_[i]) || u_[i] <= 0)
            throw DataError("energy grid values must be finite and positive");
        if (i > 0 && u_[i] <= u_[i - 1])
            throw DataError("energy grid must be strictly increasing");
    }
}

CrossSectionTable::CrossSectionTable(EnergyGrid grid, LevelList target, LevelList projectile)
    : grid_(std::move(grid)), target_(std::move(target)), projectile_(std::move(projectile)) {}

void CrossSectionTable::add(const TransitionKey& key, std::vector<double> sigma_ang2) {
    if (sigma_ang2.size() != grid_.size())
        throw DataError("cross-section vector for " + to_string(key) + " has " +
                        std::to_string(sigma_ang2.size()) + " points, grid has " +
                        std::to_string(grid_.size()));
    for (double s : sigma_ang2)
        if (!is_absent(s) && s < 0)
            throw DataError("negative cross section in " + to_string(key));
    for (const StatePair& sp : {key.initial, key.final}) {
        target_.at(sp.n1);
        projectile_.at(sp.n2);
    }
    if (!entries_.emplace(key, std::move(sigma_ang2)).second)
        throw DataError("duplicate transition " + to_string(key));
}

const std::vector<double>* CrossSectionTable::find(const TransitionKey& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

double CrossSectionTable::degeneracy_product(const StatePair& sp) const {
    return static_cast<double>(target_.at(sp.n1).degeneracy()) *
           static_cast<double>(projectile_.at(sp.n2).degeneracy());
}

SymmetrizedXsec symmetrize(const CrossSectionTable& table, const TransitionKey& key,
                           MissingReversePolicy policy) {
    const std::vector<double>* fwd = table.find(key);
    const std::vector<double>* bwd = table.find(key.reversed());
    if (!fwd && !bwd) throw DataError("transition " + to_string(key) + " absent in both directions");
    if ((!fwd || !bwd) && policy == MissingReversePolicy::require_both)
        throw DataError("incomplete pair: " + to_string(fwd ? key.reversed() : key) +
                        " is absent and policy is require-both");

    const double g_fwd = table.degeneracy_product(key.initial);
    const double g_bwd = table.degeneracy_product(key.final);

    SymmetrizedXsec out;
    out.pair_id = key.canonical();
    out.u_cm1 = table.grid().values();
    out.sigma.assign(out.u_cm1.size(), absent_xsec);

    for (std::size_t i = 0; i < out.u_cm1.size(); ++i) {
        const double sf = fwd ? (*fwd)[i] : absent_xsec;
        const double sb = bwd ? (*bwd)[i] : absent_xsec;
        if (!is_absent(sf) && !is_absent(sb)) {
            out.sigma[i] = 0.5 * (g_fwd * sf + g_bwd * sb);
        } else if (!is_absent(sf) || !is_absent(sb)) {
            // Individual points may lack one direction (e.g. below the
            // excitation threshold) even when both entries exist.
            if (policy == MissingReversePolicy::one_sided) {
                out.sigma[i] = is_absent(sf) ? g_bwd * sb : g_fwd * sf;
                out.used_one_sided = true;
            }
            // require-both leaves the point absent; the integrator drops it.
        }
    }
    return out;
}

PairInventory pair_inventory(const CrossSectionTable& table) {
    PairInventory inv;
    for (const auto& [key, sigma] : table.entries()) {
        (void)sigma;
        if (key.elastic()) {
            ++inv.elastic;
            continue;
        }
        const bool has_reverse = table.find(key.reversed()) != nullptr;
        if (!has_reverse) {
            ++inv.one_sided;
            inv.one_sided_keys.push_back(key);
        } else if (key.canonical() == key) {
            ++inv.complete_pairs;  // count each pair once, at its canonical key
        }
    }
    return inv;
}

}  // namespace collrates
