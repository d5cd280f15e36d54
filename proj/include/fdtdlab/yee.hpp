#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "fdtdlab/errors.hpp"
#include "fdtdlab/types.hpp"

namespace fdtdlab {

enum class Boundary { pec, periodic };  // periodic closure is 1-D only
enum class Polarization { tm, te };     // meaningful for dim == 2
enum class InjectionStyle { hard, soft };

/// Gaussian pulse source, waveform amplitude * exp(-q (offset - c t)^2).
/// Hard style overwrites the field value at the site, soft style adds to it.
/// The source drives the primary field component (Ez in 1-D/2-D TM and 3-D,
/// Hz in 2-D TE).
struct SourceSpec {
  double amplitude = 1.0;
  double exponent_coeff = 16.0;  // q, 1/m^2
  double offset_m = 0.7;         // pulse center position parameter, m
  std::array<int, 3> site{0, 0, 0};
  InjectionStyle style = InjectionStyle::hard;

  [[nodiscard]] double waveform(double t) const {
    const double u = offset_m - c0 * t;
    return amplitude * std::exp(-exponent_coeff * u * u);
  }
};

/// Sampling point for the primary field component; one value per step.
struct ProbeSpec {
  std::array<int, 3> index{0, 0, 0};
};

/// Staggered Yee field arrays. Only the components meaningful for (dim, pol)
/// are allocated:
///   1-D:    ez[nx+1], hy[nx]
///   2-D TM: ez[(nx+1)(ny+1)], hx[(nx+1)ny], hy[nx(ny+1)]
///   2-D TE: hz[nx ny], ex[nx(ny+1)], ey[(nx+1)ny]
///   3-D:    all six components
/// Arrays are indexed x-fastest.
struct FieldState {
  int dim = 1;
  Polarization pol = Polarization::tm;
  std::array<int, 3> cells{0, 0, 0};  // cell counts per active axis
  double dt = 0.0;                    // s
  long step_index = 0;

  std::vector<double> ex, ey, ez, hx, hy, hz;

  static FieldState make(int dim, Polarization pol, std::array<int, 3> cells,
                         double dt);
};

struct SimConfig {
  Scheme scheme = Scheme::fdtd22;
  GridSpec grid;
  std::array<int, 3> cells{0, 0, 0};
  CourantFraction s;
  double total_time = 0.0;  // s
  Boundary boundary = Boundary::pec;
  Polarization pol = Polarization::tm;
  std::vector<SourceSpec> sources;
  std::vector<ProbeSpec> probes;
  std::function<void(FieldState&)> initial_condition;  // optional

  [[nodiscard]] double dt() const;
  [[nodiscard]] long step_count() const;
};

/// One leapfrog step: H advanced from E, then E from H. The fourth-order
/// scheme uses the 4-point staggered stencil in every spatial derivative;
/// out-of-domain reads are closed by image symmetry about the PEC planes
/// (odd for tangential E, even for tangential H) or wrap for periodic 1-D.
void step(Scheme scheme, FieldState& state, const GridSpec& grid,
          Boundary boundary = Boundary::pec);

/// Force tangential E to zero on every PEC face.
void apply_pec(FieldState& state);

/// Apply one source at time t (see SourceSpec).
void inject_source(FieldState& state, const SourceSpec& source, double t);

/// Value of the primary component at a probe location.
double probe_value(const FieldState& state, const ProbeSpec& probe);

/// Discrete field energy sum(eps E^2 + mu H^2)/2 * cell volume.
double field_energy(const FieldState& state, const GridSpec& grid);

struct RunResult {
  FieldState final_state;
  std::vector<std::vector<double>> probe_series;  // one series per probe
};

/// Execute ceil(total_time / dt) leapfrog steps with per-step source
/// injection, boundary enforcement and probe sampling. Sources are also
/// applied to the initial state so that a hard source's t = 0 value is
/// present before the first step. Deterministic for a fixed config.
/// Throws InstabilityError (with the offending step) if any field magnitude
/// exceeds 1e12 times the initial maximum.
RunResult run_sim(const SimConfig& config);

}  // namespace fdtdlab
