#pragma once

namespace fdtdlab {

inline constexpr double pi = 3.14159265358979323846;

// SI vacuum constants; epsilon0 and mu0 are derived from the exact c0.
inline constexpr double c0 = 2.99792458e8;        // m/s
inline constexpr double mu0 = 1.25663706212e-6;   // H/m
inline constexpr double eps0 = 1.0 / (mu0 * c0 * c0);  // F/m

}  // namespace fdtdlab
