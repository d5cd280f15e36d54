#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fdtdlab/constants.hpp"

namespace fdtdlab {

/// Finite-difference scheme under analysis: second-order or fourth-order
/// spatial differencing (both are second order in time).
enum class Scheme { fdtd22, fdtd24 };

inline const char* to_string(Scheme s) {
  return s == Scheme::fdtd22 ? "fdtd22" : "fdtd24";
}

/// Uniform-per-axis mesh over a homogeneous lossless isotropic medium.
struct GridSpec {
  double dx = 0.0;  // m
  double dy = 0.0;  // m (ignored for dim < 2; conventionally set equal to dx)
  double dz = 0.0;  // m (ignored for dim < 3)
  int dim = 3;
  double eps_r = 1.0;
  double mu_r = 1.0;

  GridSpec() = default;
  GridSpec(double dx_, double dy_, double dz_, int dim_, double eps_r_ = 1.0,
           double mu_r_ = 1.0)
      : dx(dx_), dy(dy_), dz(dz_), dim(dim_), eps_r(eps_r_), mu_r(mu_r_) {
    validate();
  }

  /// Cubic mesh with spacing `delta` in every active direction.
  static GridSpec uniform(int dim, double delta, double eps_r = 1.0,
                          double mu_r = 1.0) {
    return GridSpec(delta, delta, delta, dim, eps_r, mu_r);
  }

  void validate() const {
    constexpr double eps_tol = 1e-12;
    if (dim < 1 || dim > 3) throw std::invalid_argument("GridSpec: dim must be 1, 2 or 3");
    if (!(dx > 0.0)) throw std::invalid_argument("GridSpec: dx must be > 0");
    if (dim >= 2 && !(dy > 0.0)) throw std::invalid_argument("GridSpec: dy must be > 0");
    if (dim >= 3 && !(dz > 0.0)) throw std::invalid_argument("GridSpec: dz must be > 0");
    if (eps_r < 1.0 - eps_tol) throw std::invalid_argument("GridSpec: eps_r must be >= 1");
    if (mu_r < 1.0 - eps_tol) throw std::invalid_argument("GridSpec: mu_r must be >= 1");
  }

  [[nodiscard]] double delta(int axis) const {
    return axis == 0 ? dx : (axis == 1 ? dy : dz);
  }

  /// Wave speed in the medium, c0 / sqrt(eps_r mu_r).
  [[nodiscard]] double wave_speed() const {
    return c0 / std::sqrt(eps_r * mu_r);
  }

  /// Coarsest spacing among active axes; defines cells-per-wavelength.
  [[nodiscard]] double max_delta() const {
    double d = dx;
    if (dim >= 2) d = std::max(d, dy);
    if (dim >= 3) d = std::max(d, dz);
    return d;
  }
};

/// A single propagating frequency together with its derived quantities on a
/// given grid. The grid Nyquist requires at least two cells per wavelength.
struct WaveSpec {
  double frequency = 0.0;             // Hz
  double angular_frequency = 0.0;     // rad/s
  double k_exact = 0.0;               // rad/m in the medium
  double cells_per_wavelength = 0.0;  // N = lambda / max active spacing

  static WaveSpec from_frequency(double frequency_hz, const GridSpec& grid) {
    if (!(frequency_hz > 0.0))
      throw std::invalid_argument("WaveSpec: frequency must be > 0");
    WaveSpec w;
    w.frequency = frequency_hz;
    w.angular_frequency = 2.0 * pi * frequency_hz;
    w.k_exact = w.angular_frequency / grid.wave_speed();
    const double lambda = grid.wave_speed() / frequency_hz;
    w.cells_per_wavelength = lambda / grid.max_delta();
    if (w.cells_per_wavelength < 2.0)
      throw std::invalid_argument(
          "WaveSpec: fewer than 2 cells per wavelength (grid Nyquist)");
    return w;
  }

  static WaveSpec from_cells_per_wavelength(double n, const GridSpec& grid) {
    if (!(n >= 2.0))
      throw std::invalid_argument(
          "WaveSpec: fewer than 2 cells per wavelength (grid Nyquist)");
    const double lambda = n * grid.max_delta();
    return from_frequency(grid.wave_speed() / lambda, grid);
  }
};

/// Propagation direction. theta is the angle from the z axis, phi the
/// azimuth in the x-y plane. For dim < 3 the direction collapses onto the
/// active axes: dim 1 fixes (theta, phi) = (pi/2, 0), dim 2 fixes theta = pi/2.
struct PropagationAngle {
  double theta = pi / 2.0;  // [0, pi]
  double phi = 0.0;         // [0, 2 pi]

  PropagationAngle() = default;
  PropagationAngle(double theta_, double phi_) : theta(theta_), phi(phi_) {
    if (theta < 0.0 || theta > pi)
      throw std::invalid_argument("PropagationAngle: theta outside [0, pi]");
    if (phi < 0.0 || phi > 2.0 * pi)
      throw std::invalid_argument("PropagationAngle: phi outside [0, 2 pi]");
  }

  /// Direction along the x axis (the only direction available in 1-D).
  static PropagationAngle axis() { return PropagationAngle(pi / 2.0, 0.0); }

  /// In-plane direction for 2-D problems.
  static PropagationAngle in_plane(double phi) {
    return PropagationAngle(pi / 2.0, phi);
  }

  [[nodiscard]] std::array<double, 3> direction_cosines() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
};

/// Time step expressed as a fraction of the scheme's own CFL maximum.
/// Analysis operations require s in (0, 1]; simulations accept s > 1 so the
/// stability boundary itself can be exercised (such runs diverge).
struct CourantFraction {
  double s = 1.0;

  CourantFraction() = default;
  explicit CourantFraction(double s_) : s(s_) {
    if (!(s > 0.0)) throw std::invalid_argument("CourantFraction: s must be > 0");
    if (!(s <= 8.0)) throw std::invalid_argument("CourantFraction: s unreasonably large");
  }

  /// Throws unless s lies in the analytical range (0, 1].
  void require_within_cfl() const {
    if (s > 1.0)
      throw std::invalid_argument("CourantFraction: s must lie in (0, 1]");
  }
};

/// Exact and numerical wavenumber at one (frequency, time step, direction).
struct DispersionPoint {
  double k_exact = 0.0;  // rad/m
  double k_num = 0.0;    // rad/m
  double vp_ratio = 0.0; // k_exact / k_num = numerical phase velocity over c
  double nde = 0.0;      // |k_num - k_exact| / k_exact

  static DispersionPoint make(double k_exact, double k_num) {
    DispersionPoint p;
    p.k_exact = k_exact;
    p.k_num = k_num;
    p.vp_ratio = k_exact / k_num;
    p.nde = std::abs(k_num - k_exact) / k_exact;
    return p;
  }
};

/// Diagnostic factors of the monotonicity analysis: the dispersion relation's
/// left side, the bracketed time-step factor Q and the angular factor P.
struct LhsDiagnostics {
  double lhs = 0.0;  // (rad/m)^2
  double q = 0.0;
  double p = 0.0;
};

}  // namespace fdtdlab
