#pragma once

#include <string>
#include <vector>

#include "collrates/config.hpp"

namespace collrates {

enum class Species { asym_top, linear_rotor };
enum class Symmetry { para, ortho };
enum class SymmetryFilter { all, para, ortho };
enum class EnergyReference { absolute, per_symmetry };

std::string to_string(Species s);
std::string to_string(Symmetry s);
std::string to_string(SymmetryFilter f);
std::string to_string(EnergyReference r);

// One rotational level. For the asymmetric top the labels are (j, ka, kc)
// with ka + kc in {j, j+1}; for the linear rotor only j is meaningful and
// ka = kc = -1.
struct Level {
    int index = 0;
    int j = 0;
    int ka = -1;
    int kc = -1;
    double energy_cm1 = 0.0;

    int degeneracy() const { return 2 * j + 1; }
};

// para iff ka+kc even (asymmetric top) or j even (linear rotor).
// Throws DataError on invalid labels.
Symmetry classify_symmetry(const Level& level, Species species);

// Energy-ordered list of levels for one collision partner. Indices are
// contiguous from 0 and equal to the position in the list.
class LevelList {
public:
    LevelList(Species species, std::vector<Level> levels,
              SymmetryFilter filter = SymmetryFilter::all,
              EnergyReference reference = EnergyReference::absolute);

    Species species() const { return species_; }
    SymmetryFilter filter() const { return filter_; }
    EnergyReference reference() const { return reference_; }
    bool synthetic() const { return synthetic_; }
    void mark_synthetic() { synthetic_ = true; }

    const std::vector<Level>& levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    bool contains(int index) const;
    const Level& at(int index) const;  // throws DataError on unknown index
    Symmetry symmetry_of(int index) const;

private:
    Species species_;
    SymmetryFilter filter_;
    EnergyReference reference_;
    bool synthetic_ = false;
    std::vector<Level> levels_;
};

// Rigid asymmetric-rotor levels from rotational constants A >= B >= C (cm^-1),
// all j up to jmax. Built per j by Wang-blocking the symmetric-top-basis
// Hamiltonian, diagonalizing each block, and assigning (ka, kc) by the
// standard correlation ordering (energies ascending: ka = 0,1,1,2,2,...,
// kc = j,j,j-1,j-1,...,0). Levels are merged across j and sorted by energy.
LevelList asym_top_levels(double a_cm1, double b_cm1, double c_cm1, int jmax);

// Linear-rotor levels E(j) = B j(j+1) - D [j(j+1)]^2. D large enough to make
// E non-monotonic below jmax is a config error.
LevelList linear_rotor_levels(double b_cm1, double d_cm1, int jmax);

enum class PopulationMode { combined, per_symmetry };

// Boltzmann weights w_i = (2j_i+1) exp(-E_i/kBT) / Q, aligned with the level
// list. `combined` normalizes over the whole list with no nuclear-spin factor
// (this reproduces the ~50% ortho:para H2 population ratio near 100 K; adding
// the ortho spin weight of 3 would not). `per_symmetry` normalizes each
// ortho/para class separately, so weights sum to 1 within each class.
std::vector<double> boltzmann_populations(const LevelList& levels, double temperature_k,
                                          PopulationMode mode,
                                          double kb_cm1_per_k = constants::kb_cm1_per_k);

}  // namespace collrates
