#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdtdlab/dispersion.hpp"
#include "fdtdlab/spectral.hpp"
#include "fdtdlab/types.hpp"
#include "fdtdlab/yee.hpp"

namespace fdtdlab {

/// 1-D pulse propagation study configuration. Defaults follow the reference
/// setup: 5 cm mesh, unit-amplitude Gaussian source, 3.6685e-8 s of travel.
/// The domain is long enough that wall reflections cannot reach the probe
/// within the simulated time.
struct Propagation1DConfig {
  double dx = 5e-2;            // m
  int nx = 480;                // 24 m domain
  int i_src = 3;               // hard-source node
  int i_probe = 82;            // 3.95 m from the source
  double total_time = 3.6685e-8;  // s
  SourceSpec source;           // amplitude 1, q = 16 m^-2, offset 0.7 m
};

/// Exact field of the 1-D problem at distance d from the source: the delayed
/// source waveform (causal; zero before the wavefront arrives).
double analytic_gaussian_at_probe(const SourceSpec& source, double distance_m,
                                  double t);

struct Waveform1D {
  double s = 0.0;
  double dt = 0.0;
  std::vector<double> t;         // sample times
  std::vector<double> numeric;   // probe series
  std::vector<double> analytic;  // reference at the probe
  double l2 = 0.0;    // relative L2 error over the post-arrival window
  double linf = 0.0;  // max absolute error over the window (unit amplitude)
};

/// Run one 1-D propagation at Courant fraction s and compare against the
/// analytic delayed Gaussian over the window t >= distance / c.
/// For the fourth-order scheme the hard source spans the stencil footprint
/// (three nodes carrying the advanced waveform) so the wide stencil never
/// reads stale values behind the injection plane.
Waveform1D run_1d_waveform(Scheme scheme, double s,
                           const Propagation1DConfig& config = {});

struct PropagationErrorRow {
  double s = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Error-versus-Courant-fraction table for the 1-D study.
std::vector<PropagationErrorRow> exp_1d_propagation(
    Scheme scheme, std::span<const double> s_values,
    const Propagation1DConfig& config = {});

/// Amplitude-spectrum centroid of the Gaussian source,
/// <f> = c sqrt(q/pi) / pi. Used as the broadband-representative frequency.
double representative_frequency(const SourceSpec& source);

/// Cavity resonance study configuration. Runs are seeded with pseudo-random
/// interior E values (fixed seed) and probed at irrational-fraction
/// coordinates to stay off nodal lines. Every run in a sweep is truncated to
/// a common physical duration (steps_base steps of the smallest-s run) so RE
/// differences across s are not artifacts of differing spectral resolution.
struct CavityConfig {
  double delta = 4e-2;          // m
  long steps_base = 65536;
  int pad_factor = 8;
  std::uint64_t seed = 0x5eedf5f5u;
  std::array<double, 3> probe_fraction{0.31, 0.57, 0.73};
  int n_tracked = 3;
  int extra_peaks = 12;  // search margin beyond the tracked modes
};

struct CavityRow {
  double s = 0.0;
  AnalyticMode mode;
  double f_meas_hz = 0.0;
  double rel_error = 0.0;
  bool matched = false;
};

/// Lowest `count` modes of one 2-D family whose analytic frequency is not
/// shared with another mode of the family.
std::vector<AnalyticMode> lowest_nondegenerate_modes_2d(ModeFamily family,
                                                        double a, double b,
                                                        int count);

/// Lowest `count` distinct resonance frequencies of a 3-D rectangular cavity,
/// each reported as a degenerate group (TE and TM members share the entry).
std::vector<AnalyticMode> lowest_mode_groups_3d(
    const std::array<double, 3>& dims, int count);

/// Relative resonance errors of a 1 m x 2 m PEC cavity (or the sides given)
/// for the tracked modes across Courant fractions.
std::vector<CavityRow> exp_cavity_2d(Scheme scheme, Polarization pol,
                                     std::span<const double> s_values,
                                     const CavityConfig& config = {},
                                     double side_a = 1.0, double side_b = 2.0);

/// 3-D analog on a cubic cavity (1 m sides by default).
std::vector<CavityRow> exp_cavity_3d(Scheme scheme,
                                     std::span<const double> s_values,
                                     const CavityConfig& config = {},
                                     double side = 1.0);

struct DispersionMapRow {
  double s = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double k_exact = 0.0;
  double k_num = 0.0;
  double vp_ratio = 0.0;
  double nde = 0.0;
  SolveStatus status = SolveStatus::ok;
};

/// Phase-velocity scan tables: the full (theta, phi) surface per Courant
/// fraction, or a slice with theta or phi held fixed.
std::vector<DispersionMapRow> dispersion_map(
    Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
    std::span<const double> s_values, std::optional<double> theta_fixed_rad,
    std::optional<double> phi_fixed_rad, int n_theta, int n_phi,
    double tol = 1e-12);

}  // namespace fdtdlab
