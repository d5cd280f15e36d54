#include "fdtdlab/yee.hpp"

#include <algorithm>
#include <cmath>

#include "fdtdlab/dispersion.hpp"

namespace fdtdlab {

namespace {

// Ghost reads for the 4-point stencil. E components are sampled on the wall
// planes (odd image, wall value zero); H components sit half a cell off the
// walls (even image). `n` is the wall node index for E, the sample count for H.
inline double rd_e(const std::vector<double>& f, long base, long stride, int i,
                   int n) {
  if (i < 0) return -f[base - stride * i];
  if (i > n) return -f[base + stride * (2 * n - i)];
  return f[base + stride * i];
}

inline double rd_h(const std::vector<double>& f, long base, long stride, int i,
                   int n) {
  if (i < 0) return f[base + stride * (-1 - i)];
  if (i >= n) return f[base + stride * (2 * n - 1 - i)];
  return f[base + stride * i];
}

// Staggered first-difference along one axis (not divided by spacing):
// 2nd order uses the neighboring pair, 4th order the 27/-1 combination.
inline double diff_e(Scheme scheme, const std::vector<double>& f, long base,
                     long stride, int i, int n) {
  if (scheme == Scheme::fdtd22)
    return f[base + stride * (i + 1)] - f[base + stride * i];
  return (27.0 * (rd_e(f, base, stride, i + 1, n) - rd_e(f, base, stride, i, n)) -
          (rd_e(f, base, stride, i + 2, n) - rd_e(f, base, stride, i - 1, n))) /
         24.0;
}

inline double diff_h(Scheme scheme, const std::vector<double>& f, long base,
                     long stride, int i, int n) {
  if (scheme == Scheme::fdtd22)
    return f[base + stride * i] - f[base + stride * (i - 1)];
  return (27.0 * (rd_h(f, base, stride, i, n) - rd_h(f, base, stride, i - 1, n)) -
          (rd_h(f, base, stride, i + 1, n) - rd_h(f, base, stride, i - 2, n))) /
         24.0;
}

inline int wrap(int i, int n) { return ((i % n) + n) % n; }

void step_1d_periodic(Scheme scheme, FieldState& st, double ce, double ch) {
  const int nx = st.cells[0];
  auto& ez = st.ez;
  auto& hy = st.hy;
  if (scheme == Scheme::fdtd22) {
    for (int i = 0; i < nx; ++i) hy[i] += ch * (ez[wrap(i + 1, nx)] - ez[i]);
    for (int i = 0; i < nx; ++i) ez[i] += ce * (hy[i] - hy[wrap(i - 1, nx)]);
  } else {
    std::vector<double> d(nx);
    for (int i = 0; i < nx; ++i)
      d[i] = (27.0 * (ez[wrap(i + 1, nx)] - ez[i]) -
              (ez[wrap(i + 2, nx)] - ez[wrap(i - 1, nx)])) / 24.0;
    for (int i = 0; i < nx; ++i) hy[i] += ch * d[i];
    for (int i = 0; i < nx; ++i)
      d[i] = (27.0 * (hy[i] - hy[wrap(i - 1, nx)]) -
              (hy[wrap(i + 1, nx)] - hy[wrap(i - 2, nx)])) / 24.0;
    for (int i = 0; i < nx; ++i) ez[i] += ce * d[i];
  }
}

void step_1d_pec(Scheme scheme, FieldState& st, double ce, double ch) {
  const int nx = st.cells[0];
  auto& ez = st.ez;
  auto& hy = st.hy;
  for (int i = 0; i < nx; ++i) hy[i] += ch * diff_e(scheme, ez, 0, 1, i, nx);
  for (int i = 1; i < nx; ++i) ez[i] += ce * diff_h(scheme, hy, 0, 1, i, nx);
}

void step_2d_tm(Scheme scheme, FieldState& st, const GridSpec& g, double dt) {
  const int nx = st.cells[0], ny = st.cells[1];
  const double ch = dt / (mu0 * g.mu_r);
  const double ce = dt / (eps0 * g.eps_r);
  const long exs = nx + 1;  // ez/hx x-stride
  // Hx(i, j+1/2) -= dt/mu * dEz/dy
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i <= nx; ++i)
      st.hx[i + exs * j] -= ch / g.dy * diff_e(scheme, st.ez, i, exs, j, ny);
  // Hy(i+1/2, j) += dt/mu * dEz/dx
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i < nx; ++i)
      st.hy[i + static_cast<long>(nx) * j] +=
          ch / g.dx * diff_e(scheme, st.ez, exs * j, 1, i, nx);
  // Ez interior += dt/eps * (dHy/dx - dHx/dy)
  for (int j = 1; j < ny; ++j)
    for (int i = 1; i < nx; ++i)
      st.ez[i + exs * j] +=
          ce * (diff_h(scheme, st.hy, static_cast<long>(nx) * j, 1, i, nx) / g.dx -
                diff_h(scheme, st.hx, i, exs, j, ny) / g.dy);
}

void step_2d_te(Scheme scheme, FieldState& st, const GridSpec& g, double dt) {
  const int nx = st.cells[0], ny = st.cells[1];
  const double ch = dt / (mu0 * g.mu_r);
  const double ce = dt / (eps0 * g.eps_r);
  // Hz(i+1/2, j+1/2) += dt/mu * (dEx/dy - dEy/dx)
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      st.hz[i + static_cast<long>(nx) * j] +=
          ch * (diff_e(scheme, st.ex, i, nx, j, ny) / g.dy -
                diff_e(scheme, st.ey, static_cast<long>(nx + 1) * j, 1, i, nx) / g.dx);
  // Ex(i+1/2, j) += dt/eps * dHz/dy   (interior j only; walls stay zero)
  for (int j = 1; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      st.ex[i + static_cast<long>(nx) * j] +=
          ce / g.dy * diff_h(scheme, st.hz, i, nx, j, ny);
  // Ey(i, j+1/2) -= dt/eps * dHz/dx
  for (int j = 0; j < ny; ++j)
    for (int i = 1; i < nx; ++i)
      st.ey[i + static_cast<long>(nx + 1) * j] -=
          ce / g.dx * diff_h(scheme, st.hz, static_cast<long>(nx) * j, 1, i, nx);
}

void step_3d(Scheme scheme, FieldState& st, const GridSpec& g, double dt) {
  const int nx = st.cells[0], ny = st.cells[1], nz = st.cells[2];
  const double ch = dt / (mu0 * g.mu_r);
  const double ce = dt / (eps0 * g.eps_r);
  // strides (x fastest)
  const long ex_sj = nx, ex_sk = static_cast<long>(nx) * (ny + 1);
  const long ey_sj = nx + 1, ey_sk = static_cast<long>(nx + 1) * ny;
  const long ez_sj = nx + 1, ez_sk = static_cast<long>(nx + 1) * (ny + 1);
  const long hx_sj = nx + 1, hx_sk = static_cast<long>(nx + 1) * ny;
  const long hy_sj = nx, hy_sk = static_cast<long>(nx) * (ny + 1);
  const long hz_sj = nx, hz_sk = static_cast<long>(nx) * ny;

  // Hx(i, j+1/2, k+1/2) += dt/mu (dEy/dz - dEz/dy)
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i <= nx; ++i)
        st.hx[i + hx_sj * j + hx_sk * k] +=
            ch * (diff_e(scheme, st.ey, i + ey_sj * j, ey_sk, k, nz) / g.dz -
                  diff_e(scheme, st.ez, i + ez_sk * k, ez_sj, j, ny) / g.dy);
  // Hy(i+1/2, j, k+1/2) += dt/mu (dEz/dx - dEx/dz)
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i < nx; ++i)
        st.hy[i + hy_sj * j + hy_sk * k] +=
            ch * (diff_e(scheme, st.ez, ez_sj * j + ez_sk * k, 1, i, nx) / g.dx -
                  diff_e(scheme, st.ex, i + ex_sj * j, ex_sk, k, nz) / g.dz);
  // Hz(i+1/2, j+1/2, k) += dt/mu (dEx/dy - dEy/dx)
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        st.hz[i + hz_sj * j + hz_sk * k] +=
            ch * (diff_e(scheme, st.ex, i + ex_sk * k, ex_sj, j, ny) / g.dy -
                  diff_e(scheme, st.ey, ey_sk * k + ey_sj * j, 1, i, nx) / g.dx);
  // Ex(i+1/2, j, k) += dt/eps (dHz/dy - dHy/dz), tangential walls skipped
  for (int k = 1; k < nz; ++k)
    for (int j = 1; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        st.ex[i + ex_sj * j + ex_sk * k] +=
            ce * (diff_h(scheme, st.hz, i + hz_sk * k, hz_sj, j, ny) / g.dy -
                  diff_h(scheme, st.hy, i + hy_sj * j, hy_sk, k, nz) / g.dz);
  // Ey(i, j+1/2, k) += dt/eps (dHx/dz - dHz/dx)
  for (int k = 1; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 1; i < nx; ++i)
        st.ey[i + ey_sj * j + ey_sk * k] +=
            ce * (diff_h(scheme, st.hx, i + hx_sj * j, hx_sk, k, nz) / g.dz -
                  diff_h(scheme, st.hz, hz_sj * j + hz_sk * k, 1, i, nx) / g.dx);
  // Ez(i, j, k+1/2) += dt/eps (dHy/dx - dHx/dy)
  for (int k = 0; k < nz; ++k)
    for (int j = 1; j < ny; ++j)
      for (int i = 1; i < nx; ++i)
        st.ez[i + ez_sj * j + ez_sk * k] +=
            ce * (diff_h(scheme, st.hy, hy_sj * j + hy_sk * k, 1, i, nx) / g.dx -
                  diff_h(scheme, st.hx, i + hx_sk * k, hx_sj, j, ny) / g.dy);
}

}  // namespace

FieldState FieldState::make(int dim, Polarization pol, std::array<int, 3> cells,
                            double dt) {
  FieldState st;
  st.dim = dim;
  st.pol = pol;
  st.cells = cells;
  st.dt = dt;
  const long nx = cells[0], ny = cells[1], nz = cells[2];
  if (dim == 1) {
    st.ez.assign(nx + 1, 0.0);
    st.hy.assign(nx, 0.0);
  } else if (dim == 2 && pol == Polarization::tm) {
    st.ez.assign((nx + 1) * (ny + 1), 0.0);
    st.hx.assign((nx + 1) * ny, 0.0);
    st.hy.assign(nx * (ny + 1), 0.0);
  } else if (dim == 2) {
    st.hz.assign(nx * ny, 0.0);
    st.ex.assign(nx * (ny + 1), 0.0);
    st.ey.assign((nx + 1) * ny, 0.0);
  } else {
    st.ex.assign(nx * (ny + 1) * (nz + 1), 0.0);
    st.ey.assign((nx + 1) * ny * (nz + 1), 0.0);
    st.ez.assign((nx + 1) * (ny + 1) * nz, 0.0);
    st.hx.assign((nx + 1) * ny * nz, 0.0);
    st.hy.assign(nx * (ny + 1) * nz, 0.0);
    st.hz.assign(nx * ny * (nz + 1), 0.0);
  }
  return st;
}

double SimConfig::dt() const { return s.s * cfl_max_dt(scheme, grid); }

long SimConfig::step_count() const {
  if (total_time <= 0.0) return 0;
  return static_cast<long>(std::ceil(total_time / dt()));
}

void step(Scheme scheme, FieldState& st, const GridSpec& grid,
          Boundary boundary) {
  if (boundary == Boundary::periodic && st.dim != 1)
    throw std::invalid_argument("periodic closure is only supported in 1-D");
  const double dt = st.dt;
  if (st.dim == 1) {
    const double ce = dt / (eps0 * grid.eps_r * grid.dx);
    const double ch = dt / (mu0 * grid.mu_r * grid.dx);
    if (boundary == Boundary::periodic)
      step_1d_periodic(scheme, st, ce, ch);
    else
      step_1d_pec(scheme, st, ce, ch);
  } else if (st.dim == 2 && st.pol == Polarization::tm) {
    step_2d_tm(scheme, st, grid, dt);
  } else if (st.dim == 2) {
    step_2d_te(scheme, st, grid, dt);
  } else {
    step_3d(scheme, st, grid, dt);
  }
  ++st.step_index;
}

void apply_pec(FieldState& st) {
  const int nx = st.cells[0], ny = st.cells[1], nz = st.cells[2];
  if (st.dim == 1) {
    st.ez.front() = 0.0;
    st.ez.back() = 0.0;
  } else if (st.dim == 2 && st.pol == Polarization::tm) {
    for (int i = 0; i <= nx; ++i) {
      st.ez[i] = 0.0;
      st.ez[i + static_cast<long>(nx + 1) * ny] = 0.0;
    }
    for (int j = 0; j <= ny; ++j) {
      st.ez[static_cast<long>(nx + 1) * j] = 0.0;
      st.ez[nx + static_cast<long>(nx + 1) * j] = 0.0;
    }
  } else if (st.dim == 2) {
    for (int i = 0; i < nx; ++i) {
      st.ex[i] = 0.0;
      st.ex[i + static_cast<long>(nx) * ny] = 0.0;
    }
    for (int j = 0; j < ny; ++j) {
      st.ey[static_cast<long>(nx + 1) * j] = 0.0;
      st.ey[nx + static_cast<long>(nx + 1) * j] = 0.0;
    }
  } else {
    const long ex_sj = nx, ex_sk = static_cast<long>(nx) * (ny + 1);
    for (int k = 0; k <= nz; ++k)
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i)
          if (j == 0 || j == ny || k == 0 || k == nz)
            st.ex[i + ex_sj * j + ex_sk * k] = 0.0;
    const long ey_sj = nx + 1, ey_sk = static_cast<long>(nx + 1) * ny;
    for (int k = 0; k <= nz; ++k)
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i)
          if (i == 0 || i == nx || k == 0 || k == nz)
            st.ey[i + ey_sj * j + ey_sk * k] = 0.0;
    const long ez_sj = nx + 1, ez_sk = static_cast<long>(nx + 1) * (ny + 1);
    for (int k = 0; k < nz; ++k)
      for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
          if (i == 0 || i == nx || j == 0 || j == ny)
            st.ez[i + ez_sj * j + ez_sk * k] = 0.0;
  }
}

namespace {

std::vector<double>& primary_component(FieldState& st) {
  if (st.dim == 2 && st.pol == Polarization::te) return st.hz;
  return st.ez;
}

long primary_index(const FieldState& st, const std::array<int, 3>& idx) {
  const int nx = st.cells[0], ny = st.cells[1];
  if (st.dim == 1) return idx[0];
  if (st.dim == 2 && st.pol == Polarization::tm)
    return idx[0] + static_cast<long>(nx + 1) * idx[1];
  if (st.dim == 2) return idx[0] + static_cast<long>(nx) * idx[1];
  return idx[0] + static_cast<long>(nx + 1) * idx[1] +
         static_cast<long>(nx + 1) * (ny + 1) * idx[2];
}

}  // namespace

void inject_source(FieldState& st, const SourceSpec& source, double t) {
  auto& f = primary_component(st);
  const long at = primary_index(st, source.site);
  const double v = source.waveform(t);
  if (source.style == InjectionStyle::hard)
    f[at] = v;
  else
    f[at] += v;
}

double probe_value(const FieldState& st, const ProbeSpec& probe) {
  const auto& f = (st.dim == 2 && st.pol == Polarization::te) ? st.hz : st.ez;
  return f[primary_index(st, probe.index)];
}

double field_energy(const FieldState& st, const GridSpec& grid) {
  double e2 = 0.0, h2 = 0.0;
  for (const auto* f : {&st.ex, &st.ey, &st.ez})
    for (double v : *f) e2 += v * v;
  for (const auto* f : {&st.hx, &st.hy, &st.hz})
    for (double v : *f) h2 += v * v;
  double vol = grid.dx;
  if (st.dim >= 2) vol *= grid.dy;
  if (st.dim >= 3) vol *= grid.dz;
  return 0.5 * (eps0 * grid.eps_r * e2 + mu0 * grid.mu_r * h2) * vol;
}

namespace {

double max_abs_field(const FieldState& st) {
  double m = 0.0;
  for (const auto* f : {&st.ex, &st.ey, &st.ez, &st.hx, &st.hy, &st.hz})
    for (double v : *f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

RunResult run_sim(const SimConfig& config) {
  config.grid.validate();
  for (int a = 0; a < config.grid.dim; ++a)
    if (config.cells[a] < 4)
      throw std::invalid_argument("run_sim: need at least 4 cells per axis");
  auto check_site = [&](const std::array<int, 3>& site, const char* what) {
    for (int a = 0; a < config.grid.dim; ++a) {
      const int lo = config.boundary == Boundary::periodic ? 0 : 1;
      const int hi = config.boundary == Boundary::periodic ? config.cells[a] - 1
                                                           : config.cells[a] - 1;
      if (site[a] < lo || site[a] > hi)
        throw std::invalid_argument(std::string("run_sim: ") + what +
                                    " site outside the grid interior");
    }
  };
  for (const auto& src : config.sources) check_site(src.site, "source");
  for (const auto& p : config.probes) check_site(p.index, "probe");
  const double dt = config.dt();
  const long steps = config.step_count();

  FieldState st = FieldState::make(config.grid.dim, config.pol, config.cells, dt);
  if (config.initial_condition) config.initial_condition(st);
  if (config.boundary == Boundary::pec) apply_pec(st);
  for (const auto& src : config.sources) inject_source(st, src, 0.0);

  double ref = max_abs_field(st);
  for (const auto& src : config.sources)
    ref = std::max(ref, std::abs(src.amplitude));
  const double blowup = 1e12 * std::max(ref, 1e-300);

  RunResult result;
  result.probe_series.assign(config.probes.size(), {});
  for (auto& s : result.probe_series) s.reserve(steps);

  for (long n = 0; n < steps; ++n) {
    step(config.scheme, st, config.grid, config.boundary);
    for (const auto& src : config.sources)
      inject_source(st, src, (n + 1) * dt);
    for (size_t p = 0; p < config.probes.size(); ++p)
      result.probe_series[p].push_back(probe_value(st, config.probes[p]));
    if ((n & 15) == 0 || n == steps - 1) {
      const double m = max_abs_field(st);
      if (!(m < blowup) || !std::isfinite(m))
        throw InstabilityError("run_sim: field divergence (CFL violation?)", n);
    }
  }
  result.final_state = std::move(st);
  return result;
}

}  // namespace fdtdlab
