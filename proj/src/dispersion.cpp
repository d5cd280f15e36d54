#include "fdtdlab/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fdtdlab {

namespace {

// Per-axis stencil symbol g(x) where the right side is sum of [g(x_axis)/d]^2
// with x_axis = k c_axis d / 2. Both symbols rise to their first maximum at
// x = pi/2 (value 1 for the 2-point stencil, 7/6 for the 4-point one).
inline double stencil_symbol(Scheme scheme, double x) {
  if (scheme == Scheme::fdtd22) return std::sin(x);
  return (27.0 * std::sin(x) - std::sin(3.0 * x)) / 24.0;
}

inline double stencil_symbol_deriv(Scheme scheme, double x) {
  if (scheme == Scheme::fdtd22) return std::cos(x);
  return (27.0 * std::cos(x) - 3.0 * std::cos(3.0 * x)) / 24.0;
}

inline double symbol_peak(Scheme scheme) {
  return scheme == Scheme::fdtd22 ? 1.0 : 7.0 / 6.0;
}

struct Direction {
  // direction cosines restricted to the grid's active axes
  std::array<double, 3> c{};
  int dim = 3;
};

Direction active_direction(const GridSpec& grid, const PropagationAngle& angle) {
  Direction d;
  d.dim = grid.dim;
  if (grid.dim == 1) {
    d.c = {1.0, 0.0, 0.0};
  } else {
    auto c = angle.direction_cosines();
    if (grid.dim == 2) c[2] = 0.0;
    d.c = c;
  }
  return d;
}

double rhs_value(Scheme scheme, const GridSpec& grid, const Direction& dir,
                 double k_num) {
  double sum = 0.0;
  for (int a = 0; a < grid.dim; ++a) {
    const double d = grid.delta(a);
    const double g = stencil_symbol(scheme, k_num * dir.c[a] * d / 2.0);
    sum += (g / d) * (g / d);
  }
  return sum;
}

double rhs_deriv(Scheme scheme, const GridSpec& grid, const Direction& dir,
                 double k_num) {
  double sum = 0.0;
  for (int a = 0; a < grid.dim; ++a) {
    const double d = grid.delta(a);
    const double x = k_num * dir.c[a] * d / 2.0;
    sum += stencil_symbol(scheme, x) * stencil_symbol_deriv(scheme, x) *
           dir.c[a] / d;
  }
  return sum;
}

// Upper end of the interval on which the right side is monotone increasing:
// every per-axis argument stays below its first maximum at pi/2.
double monotone_bracket(const GridSpec& grid, const Direction& dir) {
  double k = std::numeric_limits<double>::infinity();
  for (int a = 0; a < grid.dim; ++a) {
    const double cd = std::abs(dir.c[a]) * grid.delta(a);
    if (cd > 1e-300) k = std::min(k, pi / cd);
  }
  return k;
}

// Supremum of the right side over all k (per-axis peaks summed; approached
// but not necessarily attained for incommensurate direction cosines).
double rhs_supremum(Scheme scheme, const GridSpec& grid, const Direction& dir) {
  const double gmax = symbol_peak(scheme);
  double sum = 0.0;
  for (int a = 0; a < grid.dim; ++a) {
    if (std::abs(dir.c[a]) > 1e-300) {
      const double m = gmax / grid.delta(a);
      sum += m * m;
    }
  }
  return sum;
}

constexpr int kMaxIterations = 200;

// Bracketed Newton with bisection fallback on f(k) = rhs(k) - lhs over
// [lo, hi], f(lo) < 0 <= f(hi). Converges to relative tolerance in k.
double refine_root(Scheme scheme, const GridSpec& grid, const Direction& dir,
                   double lhs, double lo, double hi, double k_guess,
                   double tol) {
  double k = std::clamp(k_guess, lo, hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double f = rhs_value(scheme, grid, dir, k) - lhs;
    if (f > 0.0)
      hi = k;
    else
      lo = k;
    if (hi - lo <= tol * std::max(hi, 1e-300)) return 0.5 * (lo + hi);
    const double fp = 2.0 * rhs_deriv(scheme, grid, dir, k);
    double next = (fp != 0.0) ? k - f / fp : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    k = next;
  }
  throw NotConvergedError("solve_knum: iteration budget exhausted");
}

}  // namespace

double cfl_max_dt(Scheme scheme, const GridSpec& grid) {
  grid.validate();
  double inv2 = 1.0 / (grid.dx * grid.dx);
  if (grid.dim >= 2) inv2 += 1.0 / (grid.dy * grid.dy);
  if (grid.dim >= 3) inv2 += 1.0 / (grid.dz * grid.dz);
  const double dt = std::sqrt(grid.eps_r * grid.mu_r) / (c0 * std::sqrt(inv2));
  return scheme == Scheme::fdtd22 ? dt : dt * 6.0 / 7.0;
}

double dispersion_lhs(Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
                      CourantFraction s) {
  const double dt = s.s * cfl_max_dt(scheme, grid);
  const double c = grid.wave_speed();
  const double v = std::sin(wave.angular_frequency * dt / 2.0) / (c * dt);
  return v * v;
}

double dispersion_lhs_uniform22(const GridSpec& grid, const WaveSpec& wave,
                                CourantFraction s) {
  const double n = wave.cells_per_wavelength;
  const double v = std::sqrt(3.0) / (s.s * grid.dx) *
                   std::sin(pi * s.s / (std::sqrt(3.0) * n));
  return v * v;
}

double dispersion_rhs(Scheme scheme, const GridSpec& grid,
                      const PropagationAngle& angle, double k_num) {
  if (k_num < 0.0) throw std::invalid_argument("dispersion_rhs: k_num < 0");
  return rhs_value(scheme, grid, active_direction(grid, angle), k_num);
}

DispersionPoint solve_knum(Scheme scheme, const GridSpec& grid,
                           const WaveSpec& wave, CourantFraction s,
                           const PropagationAngle& angle, double tol) {
  s.require_within_cfl();
  const Direction dir = active_direction(grid, angle);
  const double lhs = dispersion_lhs(scheme, grid, wave, s);
  if (lhs == 0.0) throw std::invalid_argument("solve_knum: zero frequency");

  const double k_mono = monotone_bracket(grid, dir);
  if (!std::isfinite(k_mono))
    throw std::invalid_argument(
        "solve_knum: direction has no component along the active axes");
  if (rhs_value(scheme, grid, dir, k_mono) >= lhs) {
    const double k =
        refine_root(scheme, grid, dir, lhs, 0.0, k_mono, wave.k_exact, tol);
    return DispersionPoint::make(wave.k_exact, k);
  }

  // Left side clears the first hump of the right side. Either the mode is
  // evanescent or the first crossing sits past the monotone interval; scan
  // the quasi-periodic tail to decide.
  if (lhs > (1.0 + 1e-12) * rhs_supremum(scheme, grid, dir))
    throw NoRealRootError("solve_knum: evanescent numerical mode");

  double period = 0.0;
  for (int a = 0; a < grid.dim; ++a) {
    const double cd = std::abs(dir.c[a]) * grid.delta(a);
    if (cd > 1e-300) period = std::max(period, 2.0 * pi / cd);
  }
  const double k_end = 16.0 * period;
  const int n_scan = 200000;
  double prev_k = k_mono;
  double rhs_max = 0.0;
  for (int i = 1; i <= n_scan; ++i) {
    const double k = k_mono + (k_end - k_mono) * i / n_scan;
    const double r = rhs_value(scheme, grid, dir, k);
    rhs_max = std::max(rhs_max, r);
    if (r >= lhs) {
      const double root =
          refine_root(scheme, grid, dir, lhs, prev_k, k, 0.5 * (prev_k + k), tol);
      return DispersionPoint::make(wave.k_exact, root);
    }
    prev_k = k;
  }
  throw NoRealRootError("solve_knum: left side exceeds scanned right-side maximum");
}

AngleScan scan_angles(Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
                      CourantFraction s, int n_theta, int n_phi, double tol) {
  if (grid.dim == 3 && (n_theta < 2 || n_phi < 2))
    throw std::invalid_argument("scan_angles: grid must be at least 2 x 2");
  AngleScan scan;
  std::vector<PropagationAngle> angles;
  if (grid.dim == 1) {
    scan.n_theta = 1;
    scan.n_phi = 1;
    angles.push_back(PropagationAngle::axis());
  } else if (grid.dim == 2) {
    if (n_phi < 2) throw std::invalid_argument("scan_angles: n_phi must be >= 2");
    scan.n_theta = 1;
    scan.n_phi = n_phi;
    for (int j = 0; j < n_phi; ++j)
      angles.push_back(PropagationAngle::in_plane(2.0 * pi * j / (n_phi - 1)));
  } else {
    scan.n_theta = n_theta;
    scan.n_phi = n_phi;
    for (int i = 0; i < n_theta; ++i)
      for (int j = 0; j < n_phi; ++j)
        angles.emplace_back(pi * i / (n_theta - 1), 2.0 * pi * j / (n_phi - 1));
  }
  scan.points.reserve(angles.size());
  for (const auto& a : angles) {
    ScanPoint p;
    p.angle = a;
    try {
      p.point = solve_knum(scheme, grid, wave, s, a, tol);
    } catch (const NoRealRootError&) {
      p.status = SolveStatus::no_real_root;
      ++scan.failed;
    } catch (const NotConvergedError&) {
      p.status = SolveStatus::not_converged;
      ++scan.failed;
    }
    scan.points.push_back(p);
  }
  return scan;
}

ScanPoint max_knum_over_angles(Scheme scheme, const GridSpec& grid,
                               const WaveSpec& wave, CourantFraction s,
                               int n_theta, int n_phi, double tol) {
  const AngleScan scan = scan_angles(scheme, grid, wave, s, n_theta, n_phi, tol);
  const ScanPoint* best = nullptr;
  for (const auto& p : scan.points)
    if (p.status == SolveStatus::ok && (!best || p.point.k_num > best->point.k_num))
      best = &p;
  if (!best) throw AllPointsFailedError("max_knum_over_angles: every point failed");
  return *best;
}

std::vector<SlopeSample> monotonicity_check(
    Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
    const PropagationAngle& angle, std::span<const double> s_grid,
    double fd_step, double tol) {
  std::vector<SlopeSample> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    if (!(s - fd_step > 0.0) || !(s + fd_step <= 1.0))
      throw std::invalid_argument(
          "monotonicity_check: s +/- fd_step must stay inside (0, 1]");
    const auto lo = solve_knum(scheme, grid, wave, CourantFraction(s - fd_step),
                               angle, tol);
    const auto hi = solve_knum(scheme, grid, wave, CourantFraction(s + fd_step),
                               angle, tol);
    out.push_back({s, (hi.k_num - lo.k_num) / (2.0 * fd_step)});
  }
  return out;
}

double q_factor(const WaveSpec& wave, CourantFraction s) {
  s.require_within_cfl();
  const double n = wave.cells_per_wavelength;
  const double y = pi * s.s / (std::sqrt(3.0) * n);
  return pi * s.s * std::cos(y) - std::sqrt(3.0) * n * std::sin(y);
}

double p_factor(const GridSpec& grid, const WaveSpec& wave,
                const PropagationAngle& angle, double vp_ratio) {
  const double n = wave.cells_per_wavelength;
  const double a = std::sqrt(grid.eps_r * grid.mu_r) / vp_ratio;
  const double arg = pi * a / n;
  if (!(arg > 0.0) || !(arg < pi / 2.0))
    throw DomainViolationError("p_factor: pi a / N outside (0, pi/2)");
  const double st = std::sin(angle.theta), ct = std::cos(angle.theta);
  const double cp = std::cos(angle.phi), sp = std::sin(angle.phi);
  const double mx = arg * st * cp;
  const double my = arg * st * sp;
  const double tz = arg * ct;
  return st * cp * std::sin(mx) * std::cos(mx) +
         st * sp * std::sin(my) * std::cos(my) +
         ct * std::sin(tz) * std::cos(tz);
}

LhsDiagnostics lhs_diagnostics(Scheme scheme, const GridSpec& grid,
                               const WaveSpec& wave, CourantFraction s,
                               const PropagationAngle& angle, double vp_ratio) {
  LhsDiagnostics d;
  d.lhs = dispersion_lhs(scheme, grid, wave, s);
  d.q = q_factor(wave, s);
  d.p = p_factor(grid, wave, angle, vp_ratio);
  return d;
}

namespace {

// Trapezoid quadrature of |k_num - k_exact| over theta x phi; 1-D grids use
// the single axis direction instead.
double objective_24(const GridSpec& grid, const WaveSpec& wave, double s,
                    int n_theta, int n_phi, int* failed, int* total) {
  const CourantFraction cf(s);
  *failed = 0;
  if (grid.dim == 1) {
    *total = 1;
    const auto p = solve_knum(Scheme::fdtd24, grid, wave, cf,
                              PropagationAngle::axis());
    return std::abs(p.k_num - p.k_exact);
  }
  double sum = 0.0;
  *total = n_theta * n_phi;
  const double dth = pi / (n_theta - 1);
  const double dph = 2.0 * pi / (n_phi - 1);
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const double wt = ((i == 0 || i == n_theta - 1) ? 0.5 : 1.0) *
                        ((j == 0 || j == n_phi - 1) ? 0.5 : 1.0);
      PropagationAngle a(dth * i, dph * j);
      if (grid.dim == 2) a = PropagationAngle::in_plane(dph * j);
      try {
        const auto p = solve_knum(Scheme::fdtd24, grid, wave, cf, a);
        sum += wt * std::abs(p.k_num - p.k_exact);
      } catch (const NoRealRootError&) {
        ++*failed;
      } catch (const NotConvergedError&) {
        ++*failed;
      }
    }
  }
  if (*failed > 0.01 * *total)
    throw QuadratureFailureError(
        "optimal_courant_24: more than 1% of quadrature points failed");
  return sum * dth * dph;
}

}  // namespace

OptimalCourantResult optimal_courant_24(Scheme scheme, const GridSpec& grid,
                                        const WaveSpec& wave, int n_theta,
                                        int n_phi, double search_tol) {
  if (scheme != Scheme::fdtd24)
    throw std::invalid_argument(
        "optimal_courant_24: the second-order scheme has a monotone "
        "dispersion error, its optimum is pinned at S = 1 (no search needed)");
  if (grid.dim == 3 && (n_theta < 2 || n_phi < 2))
    throw std::invalid_argument("optimal_courant_24: quadrature grid too small");

  OptimalCourantResult res;
  int failed = 0, total = 0;
  auto f = [&](double s) {
    const double v = objective_24(grid, wave, s, n_theta, n_phi, &failed, &total);
    res.trace.emplace_back(s, v);
    return v;
  };

  // golden-section on [1e-3, 1]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1e-3, b = 1.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > search_tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  res.s_opt = 0.5 * (a + b);
  res.objective = f(res.s_opt);
  res.failed_points = failed;
  std::sort(res.trace.begin(), res.trace.end());
  return res;
}

CrossingResult knum_crossing(const GridSpec& grid, const WaveSpec& wave,
                                const PropagationAngle& angle, double tol) {
  auto diff = [&](double s) {
    const auto p =
        solve_knum(Scheme::fdtd24, grid, wave, CourantFraction(s), angle);
    return p.k_num - p.k_exact;
  };
  double lo = 1e-4, hi = 1.0;
  double flo = diff(lo), fhi = diff(hi);
  CrossingResult res;
  if (flo == 0.0) {
    res.found = true;
    res.s_cross = lo;
    return res;
  }
  if (flo * fhi > 0.0) {
    res.found = false;
    res.stays_above = flo > 0.0;
    return res;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = diff(mid);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    if (fm * flo > 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  res.found = true;
  res.s_cross = 0.5 * (lo + hi);
  return res;
}

}  // namespace fdtdlab
