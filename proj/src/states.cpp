#include "collrates/states.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "collrates/errors.hpp"

namespace collrates {

std::string to_string(Species s) {
    return s == Species::asym_top ? "asym-top" : "linear-rotor";
}

std::string to_string(Symmetry s) { return s == Symmetry::para ? "para" : "ortho"; }

std::string to_string(SymmetryFilter f) {
    switch (f) {
        case SymmetryFilter::all: return "all";
        case SymmetryFilter::para: return "para";
        case SymmetryFilter::ortho: return "ortho";
    }
    return "?";
}

std::string to_string(EnergyReference r) {
    return r == EnergyReference::absolute ? "absolute" : "per-symmetry";
}

Symmetry classify_symmetry(const Level& level, Species species) {
    if (level.j < 0) throw DataError("level has negative j");
    if (species == Species::linear_rotor)
        return level.j % 2 == 0 ? Symmetry::para : Symmetry::ortho;
    if (level.ka < 0 || level.ka > level.j || level.kc < 0 || level.kc > level.j ||
        (level.ka + level.kc != level.j && level.ka + level.kc != level.j + 1)) {
        throw DataError("invalid (ka, kc) = (" + std::to_string(level.ka) + ", " +
                        std::to_string(level.kc) + ") for j = " + std::to_string(level.j));
    }
    return (level.ka + level.kc) % 2 == 0 ? Symmetry::para : Symmetry::ortho;
}

LevelList::LevelList(Species species, std::vector<Level> levels, SymmetryFilter filter,
                     EnergyReference reference)
    : species_(species), filter_(filter), reference_(reference), levels_(std::move(levels)) {
    std::set<std::tuple<int, int, int>> seen;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        const Level& lev = levels_[i];
        if (lev.index != static_cast<int>(i))
            throw DataError("level indices must be contiguous from 0 (index " +
                            std::to_string(lev.index) + " at position " + std::to_string(i) + ")");
        if (!std::isfinite(lev.energy_cm1))
            throw DataError("non-finite level energy at index " + std::to_string(lev.index));
        if (i > 0 && lev.energy_cm1 < levels_[i - 1].energy_cm1)
            throw DataError("level energies must be non-decreasing by index");
        const Symmetry sym = classify_symmetry(lev, species_);
        if (filter_ == SymmetryFilter::para && sym != Symmetry::para)
            throw DataError("ortho level in a para-filtered list (index " +
                            std::to_string(lev.index) + ")");
        if (filter_ == SymmetryFilter::ortho && sym != Symmetry::ortho)
            throw DataError("para level in an ortho-filtered list (index " +
                            std::to_string(lev.index) + ")");
        if (!seen.insert({lev.j, lev.ka, lev.kc}).second)
            throw DataError("duplicate quantum labels at index " + std::to_string(lev.index));
    }
    if (species_ == Species::linear_rotor) {
        for (std::size_t i = 1; i < levels_.size(); ++i)
            if (levels_[i].energy_cm1 <= levels_[i - 1].energy_cm1)
                throw DataError("linear-rotor energies must increase strictly");
    }
}

bool LevelList::contains(int index) const {
    return index >= 0 && index < static_cast<int>(levels_.size());
}

const Level& LevelList::at(int index) const {
    if (!contains(index))
        throw DataError("unknown state index " + std::to_string(index) + " (list has " +
                        std::to_string(levels_.size()) + " levels)");
    return levels_[static_cast<std::size_t>(index)];
}

Symmetry LevelList::symmetry_of(int index) const { return classify_symmetry(at(index), species_); }

namespace {

// Rigid-rotor matrix elements in the symmetric-top basis |j,k>, k = -j..j,
// z axis along a (Ir representation):
//   <k|H|k>   = (B+C)/2 [j(j+1) - k^2] + A k^2
//   <k|H|k+2> = (B-C)/4 sqrt{[j(j+1)-k(k+1)][j(j+1)-(k+1)(k+2)]}
Eigen::MatrixXd rotor_hamiltonian(double a, double b, double c, int j) {
    const int n = 2 * j + 1;
    const double jj = static_cast<double>(j) * (j + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int k = -j; k <= j; ++k) {
        h(k + j, k + j) = 0.5 * (b + c) * (jj - k * k) + a * k * k;
        if (k + 2 <= j) {
            const double off = 0.25 * (b - c) *
                               std::sqrt((jj - k * (k + 1.0)) * (jj - (k + 1.0) * (k + 2.0)));
            h(k + j, k + j + 2) = off;
            h(k + j + 2, k + j) = off;
        }
    }
    return h;
}

// Wang combinations (|-k> +- |k>)/sqrt(2) split H into four blocks by k
// parity and +-: H couples only k -> k+-2 and is symmetric under k -> -k.
std::vector<double> wang_block_eigenvalues(double a, double b, double c, int j) {
    const int n = 2 * j + 1;
    const Eigen::MatrixXd h = rotor_hamiltonian(a, b, c, j);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::pair<int, Eigen::VectorXd>> basis;  // (block id, vector)
    {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
        v(j) = 1.0;  // k = 0 joins the even/+ block
        basis.emplace_back(0, v);
    }
    for (int k = 1; k <= j; ++k) {
        const int parity = k % 2;
        Eigen::VectorXd sym = Eigen::VectorXd::Zero(n);
        sym(j - k) = inv_sqrt2;
        sym(j + k) = inv_sqrt2;
        basis.emplace_back(parity == 0 ? 0 : 2, sym);
        Eigen::VectorXd asym = Eigen::VectorXd::Zero(n);
        asym(j - k) = inv_sqrt2;
        asym(j + k) = -inv_sqrt2;
        basis.emplace_back(parity == 0 ? 1 : 3, asym);
    }

    std::vector<double> eigenvalues;
    eigenvalues.reserve(static_cast<std::size_t>(n));
    for (int block = 0; block < 4; ++block) {
        std::vector<const Eigen::VectorXd*> members;
        for (const auto& [id, v] : basis)
            if (id == block) members.push_back(&v);
        if (members.empty()) continue;
        const int m = static_cast<int>(members.size());
        Eigen::MatrixXd x(n, m);
        for (int col = 0; col < m; ++col) x.col(col) = *members[static_cast<std::size_t>(col)];
        const Eigen::MatrixXd sub = x.transpose() * h * x;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sub, Eigen::EigenvaluesOnly);
        for (int i = 0; i < m; ++i) eigenvalues.push_back(solver.eigenvalues()(i));
    }
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

}  // namespace

LevelList asym_top_levels(double a_cm1, double b_cm1, double c_cm1, int jmax) {
    if (!(a_cm1 >= b_cm1 && b_cm1 >= c_cm1 && c_cm1 > 0))
        throw ConfigError("rotational constants must satisfy A >= B >= C > 0");
    if (jmax < 0) throw ConfigError("jmax must be >= 0");

    std::vector<Level> all;
    for (int j = 0; j <= jmax; ++j) {
        const std::vector<double> e = wang_block_eigenvalues(a_cm1, b_cm1, c_cm1, j);
        // Correlation ordering within j: ka ascends, kc descends with energy.
        for (int m = 0; m < 2 * j + 1; ++m) {
            Level lev;
            lev.j = j;
            lev.ka = (m + 1) / 2;
            lev.kc = j - m / 2;
            lev.energy_cm1 = e[static_cast<std::size_t>(m)];
            all.push_back(lev);
        }
    }
    std::sort(all.begin(), all.end(), [](const Level& x, const Level& y) {
        return std::tie(x.energy_cm1, x.j, x.ka) < std::tie(y.energy_cm1, y.j, y.ka);
    });
    for (std::size_t i = 0; i < all.size(); ++i) all[i].index = static_cast<int>(i);

    LevelList list(Species::asym_top, std::move(all));
    list.mark_synthetic();
    return list;
}

LevelList linear_rotor_levels(double b_cm1, double d_cm1, int jmax) {
    if (b_cm1 <= 0) throw ConfigError("rotational constant B must be positive");
    if (d_cm1 < 0) throw ConfigError("distortion constant D must be >= 0");
    if (jmax < 0) throw ConfigError("jmax must be >= 0");

    std::vector<Level> all;
    double previous = -1.0;
    for (int j = 0; j <= jmax; ++j) {
        const double x = static_cast<double>(j) * (j + 1);
        const double e = b_cm1 * x - d_cm1 * x * x;
        if (e <= previous)
            throw ConfigError("D = " + std::to_string(d_cm1) +
                              " makes E(j) non-monotonic below jmax = " + std::to_string(jmax));
        previous = e;
        Level lev;
        lev.index = j;
        lev.j = j;
        lev.energy_cm1 = e;
        all.push_back(lev);
    }
    LevelList list(Species::linear_rotor, std::move(all));
    list.mark_synthetic();
    return list;
}

std::vector<double> boltzmann_populations(const LevelList& levels, double temperature_k,
                                          PopulationMode mode, double kb_cm1_per_k) {
    if (temperature_k <= 0) throw ConfigError("temperature must be positive");
    if (levels.size() == 0) throw DataError("empty level list");
    const double kbt = kb_cm1_per_k * temperature_k;

    // No energy shift: E >= 0 keeps every term in [0, 2j+1], and identical
    // terms here and in partition_function keep the normalizations consistent.
    std::vector<double> term(levels.size());
    double q_all = 0.0, q_para = 0.0, q_ortho = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const Level& lev = levels.levels()[i];
        term[i] = lev.degeneracy() * std::exp(-lev.energy_cm1 / kbt);
        q_all += term[i];
        if (classify_symmetry(lev, levels.species()) == Symmetry::para)
            q_para += term[i];
        else
            q_ortho += term[i];
    }

    if (q_all <= 0)
        throw NumericalError("all Boltzmann terms underflow at T = " +
                             std::to_string(temperature_k) + " K");
    std::vector<double> w(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (mode == PopulationMode::combined) {
            w[i] = term[i] / q_all;
        } else {
            const Level& lev = levels.levels()[i];
            const double q =
                classify_symmetry(lev, levels.species()) == Symmetry::para ? q_para : q_ortho;
            w[i] = q > 0 ? term[i] / q : 0.0;
        }
    }
    return w;
}

}  // namespace collrates
