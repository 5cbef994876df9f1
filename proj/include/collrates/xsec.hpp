#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "collrates/config.hpp"
#include "collrates/states.hpp"

namespace collrates {

// (target state n1, projectile state n2) indices into the two level lists.
struct StatePair {
    int n1 = 0;
    int n2 = 0;
    auto operator<=>(const StatePair&) const = default;
};

// Directed transition n1 n2 -> n1' n2'.
struct TransitionKey {
    StatePair initial;
    StatePair final;
    auto operator<=>(const TransitionKey&) const = default;

    TransitionKey reversed() const { return {final, initial}; }
    bool elastic() const { return initial == final; }
    // Direction-independent pair id: the lexicographically smaller direction.
    TransitionKey canonical() const { return reversed() < *this ? reversed() : *this; }
};

std::string to_string(const TransitionKey& key);

// Collision-energy grid, cm^-1: strictly increasing, positive, >= 2 points.
class EnergyGrid {
public:
    explicit EnergyGrid(std::vector<double> u_cm1);
    const std::vector<double>& values() const { return u_; }
    std::size_t size() const { return u_.size(); }

private:
    std::vector<double> u_;
};

// Per-point "no data" marker inside cross-section vectors.
inline constexpr double absent_xsec = std::numeric_limits<double>::quiet_NaN();
inline bool is_absent(double sigma) { return std::isnan(sigma); }

// Cross sections sigma(U) in A^2 on a shared energy grid, immutable once
// loaded; readers may share it across threads freely.
class CrossSectionTable {
public:
    CrossSectionTable(EnergyGrid grid, LevelList target, LevelList projectile);

    // Validates length, non-negativity of present points, known state
    // indices; duplicate keys are rejected. Throws DataError.
    void add(const TransitionKey& key, std::vector<double> sigma_ang2);

    const EnergyGrid& grid() const { return grid_; }
    const LevelList& target() const { return target_; }
    const LevelList& projectile() const { return projectile_; }
    const std::map<TransitionKey, std::vector<double>>& entries() const { return entries_; }
    const std::vector<double>* find(const TransitionKey& key) const;

    // (2j1+1)(2j2+1) for the pair of initial states named by `sp`.
    double degeneracy_product(const StatePair& sp) const;

private:
    EnergyGrid grid_;
    LevelList target_;
    LevelList projectile_;
    std::map<TransitionKey, std::vector<double>> entries_;
};

// Degeneracy-weighted average of the two directions of one transition,
//   sigma~ = 1/2 { (2j1+1)(2j2+1) sigma_fwd + (2j1'+1)(2j2'+1) sigma_bwd },
// identical for a key and its reverse by construction, which is what makes
// the downstream rates obey microscopic reversibility.
struct SymmetrizedXsec {
    TransitionKey pair_id;               // canonical direction
    std::vector<double> u_cm1;           // grid copy
    std::vector<double> sigma;           // weighted A^2; NaN where no data
    bool used_one_sided = false;         // any point fell back to g*sigma_present
};

SymmetrizedXsec symmetrize(const CrossSectionTable& table, const TransitionKey& key,
                           MissingReversePolicy policy);

struct PairInventory {
    int complete_pairs = 0;              // pairs with both directions present
    int one_sided = 0;                   // keys whose reverse is absent
    int elastic = 0;                     // keys with initial == final
    std::vector<TransitionKey> one_sided_keys;

    int classified_keys() const { return 2 * complete_pairs + one_sided + elastic; }
};

PairInventory pair_inventory(const CrossSectionTable& table);

}  // namespace collrates
