#include "fdtdlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace fdtdlab {

double analytic_gaussian_at_probe(const SourceSpec& source, double distance_m,
                                  double t) {
  const double delay = distance_m / c0;
  if (t < delay) return 0.0;
  return source.waveform(t - delay);
}

Waveform1D run_1d_waveform(Scheme scheme, double s,
                           const Propagation1DConfig& config) {
  SimConfig sim;
  sim.scheme = scheme;
  sim.grid = GridSpec::uniform(1, config.dx);
  sim.cells = {config.nx, 0, 0};
  sim.s = CourantFraction(s);
  sim.total_time = config.total_time;
  sim.probes.push_back({{config.i_probe, 0, 0}});

  const int depth = scheme == Scheme::fdtd22 ? 1 : 3;
  for (int m = 0; m < depth; ++m) {
    SourceSpec src = config.source;
    src.site = {config.i_src - m, 0, 0};
    src.offset_m = config.source.offset_m - m * config.dx;
    sim.sources.push_back(src);
  }

  const RunResult run = run_sim(sim);

  Waveform1D w;
  w.s = s;
  w.dt = sim.dt();
  w.numeric = run.probe_series.at(0);
  const double d = (config.i_probe - config.i_src) * config.dx;
  w.t.resize(w.numeric.size());
  w.analytic.resize(w.numeric.size());
  double num2 = 0.0, ref2 = 0.0, linf = 0.0;
  for (size_t n = 0; n < w.numeric.size(); ++n) {
    w.t[n] = (static_cast<double>(n) + 1.0) * w.dt;
    w.analytic[n] = analytic_gaussian_at_probe(config.source, d, w.t[n]);
    if (w.t[n] >= d / c0) {
      const double diff = w.numeric[n] - w.analytic[n];
      num2 += diff * diff;
      ref2 += w.analytic[n] * w.analytic[n];
      linf = std::max(linf, std::abs(diff));
    }
  }
  w.l2 = ref2 > 0.0 ? std::sqrt(num2 / ref2) : std::sqrt(num2);
  w.linf = linf;
  return w;
}

std::vector<PropagationErrorRow> exp_1d_propagation(
    Scheme scheme, std::span<const double> s_values,
    const Propagation1DConfig& config) {
  std::vector<PropagationErrorRow> rows;
  rows.reserve(s_values.size());
  for (double s : s_values) {
    const Waveform1D w = run_1d_waveform(scheme, s, config);
    rows.push_back({s, w.l2, w.linf});
  }
  return rows;
}

double representative_frequency(const SourceSpec& source) {
  // centroid of the one-sided amplitude spectrum of exp(-q (offset - c t)^2):
  // the spectrum is exp(-w^2 / (4 q c^2)), a half-Gaussian with mean
  // 2 c sqrt(q/pi).
  return c0 * std::sqrt(source.exponent_coeff / pi) / pi;
}

namespace {

void seed_random_efield(FieldState& st, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int nx = st.cells[0], ny = st.cells[1], nz = st.cells[2];
  if (st.dim == 2 && st.pol == Polarization::tm) {
    for (int j = 1; j < ny; ++j)
      for (int i = 1; i < nx; ++i)
        st.ez[i + static_cast<long>(nx + 1) * j] = u(rng);
  } else if (st.dim == 2) {
    for (int j = 1; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        st.ex[i + static_cast<long>(nx) * j] = u(rng);
    for (int j = 0; j < ny; ++j)
      for (int i = 1; i < nx; ++i)
        st.ey[i + static_cast<long>(nx + 1) * j] = u(rng);
  } else {
    const long ex_sj = nx, ex_sk = static_cast<long>(nx) * (ny + 1);
    for (int k = 1; k < nz; ++k)
      for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          st.ex[i + ex_sj * j + ex_sk * k] = u(rng);
    const long ey_sj = nx + 1, ey_sk = static_cast<long>(nx + 1) * ny;
    for (int k = 1; k < nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 1; i < nx; ++i)
          st.ey[i + ey_sj * j + ey_sk * k] = u(rng);
    const long ez_sj = nx + 1, ez_sk = static_cast<long>(nx + 1) * (ny + 1);
    for (int k = 0; k < nz; ++k)
      for (int j = 1; j < ny; ++j)
        for (int i = 1; i < nx; ++i)
          st.ez[i + ez_sj * j + ez_sk * k] = u(rng);
  }
}

std::vector<CavityRow> cavity_sweep(Scheme scheme, int dim, Polarization pol,
                                    std::span<const double> s_values,
                                    const CavityConfig& config,
                                    const std::array<double, 3>& sides,
                                    std::span<const AnalyticMode> tracked) {
  if (s_values.empty()) return {};
  GridSpec grid = dim == 2 ? GridSpec(config.delta, config.delta, config.delta, 2)
                           : GridSpec::uniform(3, config.delta);
  std::array<int, 3> cells{};
  for (int a = 0; a < dim; ++a)
    cells[a] = static_cast<int>(std::lround(sides[a] / config.delta));

  // common physical duration: steps_base steps of the smallest-s run
  const double s_min = *std::min_element(s_values.begin(), s_values.end());
  const double t_common =
      static_cast<double>(config.steps_base) * s_min * cfl_max_dt(scheme, grid);

  double f_low = tracked.front().f_ref_hz;
  for (const auto& m : tracked) f_low = std::min(f_low, m.f_ref_hz);

  std::vector<CavityRow> rows;
  for (double s : s_values) {
    SimConfig sim;
    sim.scheme = scheme;
    sim.grid = grid;
    sim.cells = cells;
    sim.s = CourantFraction(s);
    sim.total_time = t_common;
    sim.pol = pol;
    std::array<int, 3> pidx{};
    for (int a = 0; a < dim; ++a)
      pidx[a] = std::max(
          1, std::min(cells[a] - 1,
                      static_cast<int>(std::lround(config.probe_fraction[a] *
                                                   cells[a]))));
    sim.probes.push_back({pidx});
    sim.initial_condition = [&](FieldState& st) {
      seed_random_efield(st, config.seed);
    };

    const RunResult run = run_sim(sim);
    Spectrum spec =
        spectrum(run.probe_series.at(0), sim.dt(), config.pad_factor);
    // restrict the peak search to the tracked band; the random excitation
    // rings at every cavity mode and higher lines would crowd out the low ones
    double f_high = 0.0;
    for (const auto& m : tracked) f_high = std::max(f_high, m.f_ref_hz);
    const size_t cut = std::min(
        spec.freq_hz.size(),
        static_cast<size_t>(1.15 * f_high / spec.bin_hz) + 1);
    spec.freq_hz.resize(cut);
    spec.magnitude.resize(cut);
    const PeakList peaks =
        find_peaks(spec, static_cast<int>(tracked.size()) + config.extra_peaks,
                   0.02 * f_low);
    const ResonanceReport report =
        match_and_score(peaks, tracked, 1.0 / t_common);
    for (size_t k = 0; k < report.entries.size(); ++k) {
      const auto& e = report.entries[k];
      CavityRow row;
      row.s = s;
      row.mode.mode = e.mode;
      row.mode.f_ref_hz = e.f_ref_hz;
      for (const auto& t : tracked)
        if (t.f_ref_hz == e.f_ref_hz) row.mode = t;
      row.f_meas_hz = e.f_meas_hz;
      row.rel_error = e.rel_error;
      row.matched = e.matched;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

std::vector<AnalyticMode> lowest_nondegenerate_modes_2d(ModeFamily family,
                                                        double a, double b,
                                                        int count) {
  struct Entry {
    ModeIndices mode;
    double f;
  };
  std::vector<Entry> all;
  const int mmax = 10;
  for (int m = 0; m <= mmax; ++m)
    for (int n = 0; n <= mmax; ++n) {
      if (family == ModeFamily::tm && (m < 1 || n < 1)) continue;
      if (family == ModeFamily::te && m + n < 1) continue;
      all.push_back(
          {{m, n, 0}, analytic_resonance({a, b, 0.0}, 2, family, {m, n, 0})});
    }
  std::sort(all.begin(), all.end(),
            [](const Entry& x, const Entry& y) { return x.f < y.f; });
  std::vector<AnalyticMode> out;
  for (size_t i = 0; i < all.size() && static_cast<int>(out.size()) < count; ++i) {
    const bool deg =
        (i > 0 && std::abs(all[i].f - all[i - 1].f) < 1e-6 * all[i].f) ||
        (i + 1 < all.size() && std::abs(all[i + 1].f - all[i].f) < 1e-6 * all[i].f);
    if (deg) continue;
    out.push_back({all[i].mode, family, all[i].f, 1});
  }
  return out;
}

std::vector<AnalyticMode> lowest_mode_groups_3d(
    const std::array<double, 3>& dims, int count) {
  struct Entry {
    ModeIndices mode;
    ModeFamily family;
    double f;
  };
  std::vector<Entry> all;
  const int mmax = 6;
  for (int m = 0; m <= mmax; ++m)
    for (int n = 0; n <= mmax; ++n)
      for (int p = 0; p <= mmax; ++p) {
        if (m >= 1 && n >= 1)
          all.push_back({{m, n, p}, ModeFamily::tm,
                         analytic_resonance(dims, 3, ModeFamily::tm, {m, n, p})});
        if (p >= 1 && m + n >= 1)
          all.push_back({{m, n, p}, ModeFamily::te,
                         analytic_resonance(dims, 3, ModeFamily::te, {m, n, p})});
      }
  std::sort(all.begin(), all.end(),
            [](const Entry& x, const Entry& y) { return x.f < y.f; });
  std::vector<AnalyticMode> groups;
  for (const auto& e : all) {
    if (!groups.empty() &&
        std::abs(e.f - groups.back().f_ref_hz) < 1e-6 * e.f) {
      ++groups.back().degeneracy;
      continue;
    }
    if (static_cast<int>(groups.size()) == count) break;
    groups.push_back({e.mode, e.family, e.f, 1});
  }
  return groups;
}

std::vector<CavityRow> exp_cavity_2d(Scheme scheme, Polarization pol,
                                     std::span<const double> s_values,
                                     const CavityConfig& config, double side_a,
                                     double side_b) {
  const ModeFamily family =
      pol == Polarization::tm ? ModeFamily::tm : ModeFamily::te;
  const auto tracked =
      lowest_nondegenerate_modes_2d(family, side_a, side_b, config.n_tracked);
  return cavity_sweep(scheme, 2, pol, s_values, config,
                      {side_a, side_b, 0.0}, tracked);
}

std::vector<CavityRow> exp_cavity_3d(Scheme scheme,
                                     std::span<const double> s_values,
                                     const CavityConfig& config, double side) {
  const auto tracked =
      lowest_mode_groups_3d({side, side, side}, config.n_tracked);
  return cavity_sweep(scheme, 3, Polarization::tm, s_values, config,
                      {side, side, side}, tracked);
}

std::vector<DispersionMapRow> dispersion_map(
    Scheme scheme, const GridSpec& grid, const WaveSpec& wave,
    std::span<const double> s_values, std::optional<double> theta_fixed_rad,
    std::optional<double> phi_fixed_rad, int n_theta, int n_phi, double tol) {
  std::vector<double> thetas, phis;
  if (grid.dim == 1) {
    thetas = {pi / 2.0};
    phis = {0.0};
  } else {
    if (theta_fixed_rad || grid.dim == 2) {
      thetas = {grid.dim == 2 ? pi / 2.0 : *theta_fixed_rad};
    } else {
      for (int i = 0; i < n_theta; ++i) thetas.push_back(pi * i / (n_theta - 1));
    }
    if (phi_fixed_rad) {
      phis = {*phi_fixed_rad};
    } else {
      for (int j = 0; j < n_phi; ++j) phis.push_back(2.0 * pi * j / (n_phi - 1));
    }
  }

  std::vector<DispersionMapRow> rows;
  rows.reserve(s_values.size() * thetas.size() * phis.size());
  for (double s : s_values) {
    for (double th : thetas) {
      for (double ph : phis) {
        DispersionMapRow row;
        row.s = s;
        row.theta = th;
        row.phi = ph;
        row.k_exact = wave.k_exact;
        try {
          const auto p = solve_knum(scheme, grid, wave, CourantFraction(s),
                                    PropagationAngle(th, ph), tol);
          row.k_num = p.k_num;
          row.vp_ratio = p.vp_ratio;
          row.nde = p.nde;
        } catch (const NoRealRootError&) {
          row.status = SolveStatus::no_real_root;
        } catch (const NotConvergedError&) {
          row.status = SolveStatus::not_converged;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace fdtdlab
