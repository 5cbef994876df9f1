#pragma once

namespace collrates::constants {

// Spectroscopic units throughout: energies in cm^-1, cross sections in A^2,
// speeds in cm/s, rate coefficients in cm^3/s.
inline constexpr double kb_cm1_per_k = 0.695034800;     // Boltzmann constant, cm^-1/K
inline constexpr double hc_erg_cm = 1.986445857e-16;    // converts cm^-1 to erg
inline constexpr double amu_g = 1.66053907e-24;         // unified atomic mass unit, g
inline constexpr double ang2_to_cm2 = 1e-16;            // A^2 to cm^2

}  // namespace collrates::constants
