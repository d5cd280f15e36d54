#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fdtdlab/errors.hpp"
#include "fdtdlab/types.hpp"

namespace fdtdlab {

/// Largest stable time step (seconds) for the scheme on this grid. Inactive
/// axes drop out of the sum for dim < 3; the fourth-order scheme carries the
/// 6/7 factor.
double cfl_max_dt(Scheme scheme, const GridSpec& grid);

/// Squared left-hand side of the dispersion relation, [sin(w dt/2)/(c dt)]^2,
/// with dt = s * cfl_max_dt(scheme, grid). Units (rad/m)^2.
double dispersion_lhs(Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
                      CourantFraction s);

/// Closed form of the left side for a uniform 3-D mesh and the second-order
/// scheme: [sqrt(3)/(S dx) * sin(pi S / (sqrt(3) N))]^2. Used as an algebraic
/// cross-check of dispersion_lhs.
double dispersion_lhs_uniform22(const GridSpec& grid, const WaveSpec& wave,
                                CourantFraction s);

/// Squared right-hand side evaluated at trial numerical wavenumber k_num,
/// summed over the active axes with direction cosines taken from `angle`.
double dispersion_rhs(Scheme scheme, const GridSpec& grid,
                      const PropagationAngle& angle, double k_num);

/// Solve the implicit dispersion relation for the smallest positive numerical
/// wavenumber (the physical branch).
///
/// The root is bracketed inside the interval where the right side is still
/// monotonically increasing (every per-axis term is below its first maximum,
/// reached at stencil argument pi/2 for both schemes), so branch jumps are
/// impossible. If the left side exceeds the right side's maximum along this
/// direction the numerical mode is evanescent and NoRealRootError is thrown.
DispersionPoint solve_knum(Scheme scheme, const GridSpec& grid,
                           const WaveSpec& wave, CourantFraction s,
                           const PropagationAngle& angle, double tol = 1e-12);

enum class SolveStatus { ok, no_real_root, not_converged };

struct ScanPoint {
  PropagationAngle angle;
  SolveStatus status = SolveStatus::ok;
  DispersionPoint point;  // valid when status == ok
};

struct AngleScan {
  int n_theta = 0;
  int n_phi = 0;
  std::vector<ScanPoint> points;  // theta-major order
  int failed = 0;                 // points with status != ok
};

/// Dense (theta, phi) scan on uniform grids over [0, pi] x [0, 2 pi].
/// Failed points are flagged, never fatal. For dim 2 only phi is scanned;
/// for dim 1 the single axis direction is returned.
AngleScan scan_angles(Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
                      CourantFraction s, int n_theta, int n_phi,
                      double tol = 1e-12);

/// Scan point with the largest numerical wavenumber.
/// Throws AllPointsFailedError if no point converged.
ScanPoint max_knum_over_angles(Scheme scheme, const GridSpec& grid,
                               const WaveSpec& wave, CourantFraction s,
                               int n_theta, int n_phi, double tol = 1e-12);

struct SlopeSample {
  double s = 0.0;
  double dknum_ds = 0.0;  // central finite-difference estimate
};

/// Central finite-difference estimates of d k_num / d S along one direction.
/// The monotonicity statements assert every estimate <= 0 up to solver noise.
std::vector<SlopeSample> monotonicity_check(
    Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
    const PropagationAngle& angle, std::span<const double> s_grid,
    double fd_step = 1e-4, double tol = 1e-12);

/// Bracketed time-step factor Q = pi S cos(pi S/(sqrt(3) N)) -
/// sqrt(3) N sin(pi S/(sqrt(3) N)). Negative for all S in (0,1], N >= 2.
double q_factor(const WaveSpec& wave, CourantFraction s);

/// Angular factor P of the right side's S-derivative; non-negative over the
/// whole (theta, phi) domain. `vp_ratio` is the numerical-to-exact phase
/// velocity ratio at the evaluation point; a = c0/vp must satisfy
/// pi a / N in (0, pi/2) or DomainViolationError is thrown.
double p_factor(const GridSpec& grid, const WaveSpec& wave,
                const PropagationAngle& angle, double vp_ratio);

/// Convenience bundle of the diagnostic factors at one configuration.
LhsDiagnostics lhs_diagnostics(Scheme scheme, const GridSpec& grid,
                               const WaveSpec& wave, CourantFraction s,
                               const PropagationAngle& angle, double vp_ratio);

struct OptimalCourantResult {
  double s_opt = 0.0;
  double objective = 0.0;          // quadrature value at s_opt
  int failed_points = 0;           // solver failures at s_opt's quadrature
  std::vector<std::pair<double, double>> trace;  // (s, objective) evaluations
};

/// Courant fraction minimizing the angular integral of |k_num - k_exact| for
/// the fourth-order scheme (golden-section search over s in [1e-3, 1],
/// trapezoid quadrature on an n_theta x n_phi grid; the 1-D reduction uses the
/// plain axis-direction |k_num - k_exact|).
///
/// The second-order scheme is rejected: its error is monotone in S, so the
/// optimum is pinned at S = 1 and no search is meaningful.
OptimalCourantResult optimal_courant_24(Scheme scheme, const GridSpec& grid,
                                        const WaveSpec& wave, int n_theta,
                                        int n_phi, double search_tol = 1e-4);

struct CrossingResult {
  bool found = false;
  double s_cross = 0.0;   // valid when found
  bool stays_above = false;  // when !found: k_num - k_exact keeps this sign
};

/// Courant fraction where the fourth-order scheme's k_num - k_exact changes
/// sign along a fixed direction (bisection). When the difference keeps one
/// sign over (0, 1], the result reports which side it stays on.
CrossingResult knum_crossing(const GridSpec& grid, const WaveSpec& wave,
                                const PropagationAngle& angle,
                                double tol = 1e-6);

}  // namespace fdtdlab
