// Python bindings for the analysis core: dispersion solving, scans, the
// optimal-time-step search, spectral utilities and the scripted experiments.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fdtdlab/dispersion.hpp"
#include "fdtdlab/experiments.hpp"
#include "fdtdlab/spectral.hpp"
#include "fdtdlab/types.hpp"
#include "fdtdlab/yee.hpp"

namespace py = pybind11;
using namespace fdtdlab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical-dispersion analysis for FDTD(2,2)/FDTD(2,4) with "
            "Yee-grid validation experiments";

  m.attr("C0") = c0;

  py::register_exception<NoRealRootError>(m, "NoRealRootError");
  py::register_exception<NotConvergedError>(m, "NotConvergedError");
  py::register_exception<AllPointsFailedError>(m, "AllPointsFailedError");
  py::register_exception<InstabilityError>(m, "InstabilityError");
  py::register_exception<DomainViolationError>(m, "DomainViolationError");

  py::enum_<Scheme>(m, "Scheme")
      .value("FDTD22", Scheme::fdtd22)
      .value("FDTD24", Scheme::fdtd24);

  py::enum_<Polarization>(m, "Polarization")
      .value("TM", Polarization::tm)
      .value("TE", Polarization::te);

  py::enum_<ModeFamily>(m, "ModeFamily")
      .value("TM", ModeFamily::tm)
      .value("TE", ModeFamily::te);

  py::enum_<SolveStatus>(m, "SolveStatus")
      .value("OK", SolveStatus::ok)
      .value("NO_REAL_ROOT", SolveStatus::no_real_root)
      .value("NOT_CONVERGED", SolveStatus::not_converged);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<double, double, double, int, double, double>(),
           py::arg("dx"), py::arg("dy"), py::arg("dz"), py::arg("dim"),
           py::arg("eps_r") = 1.0, py::arg("mu_r") = 1.0)
      .def_static("uniform", &GridSpec::uniform, py::arg("dim"),
                  py::arg("delta"), py::arg("eps_r") = 1.0,
                  py::arg("mu_r") = 1.0)
      .def_readonly("dx", &GridSpec::dx)
      .def_readonly("dy", &GridSpec::dy)
      .def_readonly("dz", &GridSpec::dz)
      .def_readonly("dim", &GridSpec::dim)
      .def_readonly("eps_r", &GridSpec::eps_r)
      .def_readonly("mu_r", &GridSpec::mu_r)
      .def("wave_speed", &GridSpec::wave_speed);

  py::class_<WaveSpec>(m, "WaveSpec")
      .def_static("from_frequency", &WaveSpec::from_frequency,
                  py::arg("frequency_hz"), py::arg("grid"))
      .def_static("from_cells_per_wavelength",
                  &WaveSpec::from_cells_per_wavelength, py::arg("n"),
                  py::arg("grid"))
      .def_readonly("frequency", &WaveSpec::frequency)
      .def_readonly("angular_frequency", &WaveSpec::angular_frequency)
      .def_readonly("k_exact", &WaveSpec::k_exact)
      .def_readonly("cells_per_wavelength", &WaveSpec::cells_per_wavelength);

  py::class_<PropagationAngle>(m, "PropagationAngle")
      .def(py::init<double, double>(), py::arg("theta"), py::arg("phi"))
      .def_static("axis", &PropagationAngle::axis)
      .def_static("in_plane", &PropagationAngle::in_plane, py::arg("phi"))
      .def_readonly("theta", &PropagationAngle::theta)
      .def_readonly("phi", &PropagationAngle::phi);

  py::class_<DispersionPoint>(m, "DispersionPoint")
      .def_readonly("k_exact", &DispersionPoint::k_exact)
      .def_readonly("k_num", &DispersionPoint::k_num)
      .def_readonly("vp_ratio", &DispersionPoint::vp_ratio)
      .def_readonly("nde", &DispersionPoint::nde);

  py::class_<ScanPoint>(m, "ScanPoint")
      .def_readonly("angle", &ScanPoint::angle)
      .def_readonly("status", &ScanPoint::status)
      .def_readonly("point", &ScanPoint::point);

  py::class_<AngleScan>(m, "AngleScan")
      .def_readonly("n_theta", &AngleScan::n_theta)
      .def_readonly("n_phi", &AngleScan::n_phi)
      .def_readonly("points", &AngleScan::points)
      .def_readonly("failed", &AngleScan::failed);

  m.def(
      "cfl_max_dt",
      [](Scheme s, const GridSpec& g) { return cfl_max_dt(s, g); },
      py::arg("scheme"), py::arg("grid"),
      "Largest stable time step in seconds for the scheme on this grid");

  m.def(
      "dispersion_lhs",
      [](Scheme sch, const GridSpec& g, const WaveSpec& w, double s) {
        return dispersion_lhs(sch, g, w, CourantFraction(s));
      },
      py::arg("scheme"), py::arg("grid"), py::arg("wave"), py::arg("s"));

  m.def(
      "dispersion_rhs",
      [](Scheme sch, const GridSpec& g, const PropagationAngle& a, double k) {
        return dispersion_rhs(sch, g, a, k);
      },
      py::arg("scheme"), py::arg("grid"), py::arg("angle"), py::arg("k_num"));

  m.def(
      "solve_knum",
      [](Scheme sch, const GridSpec& g, const WaveSpec& w, double s,
         const PropagationAngle& a, double tol) {
        return solve_knum(sch, g, w, CourantFraction(s), a, tol);
      },
      py::arg("scheme"), py::arg("grid"), py::arg("wave"), py::arg("s"),
      py::arg("angle"), py::arg("tol") = 1e-12,
      "Smallest positive root of the implicit dispersion relation");

  m.def(
      "scan_angles",
      [](Scheme sch, const GridSpec& g, const WaveSpec& w, double s,
         int n_theta, int n_phi) {
        return scan_angles(sch, g, w, CourantFraction(s), n_theta, n_phi);
      },
      py::arg("scheme"), py::arg("grid"), py::arg("wave"), py::arg("s"),
      py::arg("n_theta"), py::arg("n_phi"));

  m.def(
      "max_knum_over_angles",
      [](Scheme sch, const GridSpec& g, const WaveSpec& w, double s,
         int n_theta, int n_phi) {
        return max_knum_over_angles(sch, g, w, CourantFraction(s), n_theta,
                                    n_phi);
      },
      py::arg("scheme"), py::arg("grid"), py::arg("wave"), py::arg("s"),
      py::arg("n_theta"), py::arg("n_phi"));

  m.def(
      "q_factor",
      [](const WaveSpec& w, double s) { return q_factor(w, CourantFraction(s)); },
      py::arg("wave"), py::arg("s"));

  m.def("p_factor", &p_factor, py::arg("grid"), py::arg("wave"),
        py::arg("angle"), py::arg("vp_ratio"));

  py::class_<OptimalCourantResult>(m, "OptimalCourantResult")
      .def_readonly("s_opt", &OptimalCourantResult::s_opt)
      .def_readonly("objective", &OptimalCourantResult::objective)
      .def_readonly("failed_points", &OptimalCourantResult::failed_points)
      .def_readonly("trace", &OptimalCourantResult::trace);

  m.def("optimal_courant_24", &optimal_courant_24, py::arg("scheme"),
        py::arg("grid"), py::arg("wave"), py::arg("n_theta"), py::arg("n_phi"),
        py::arg("search_tol") = 1e-4);

  py::class_<CrossingResult>(m, "CrossingResult")
      .def_readonly("found", &CrossingResult::found)
      .def_readonly("s_cross", &CrossingResult::s_cross)
      .def_readonly("stays_above", &CrossingResult::stays_above);

  m.def("knum_crossing", &knum_crossing, py::arg("grid"), py::arg("wave"),
        py::arg("angle"), py::arg("tol") = 1e-6);

  // spectral utilities
  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("freq_hz", &Spectrum::freq_hz)
      .def_readonly("magnitude", &Spectrum::magnitude)
      .def_readonly("bin_hz", &Spectrum::bin_hz);

  m.def(
      "spectrum",
      [](const std::vector<double>& series, double dt, int pad_factor) {
        return spectrum(series, dt, pad_factor);
      },
      py::arg("series"), py::arg("dt"), py::arg("pad_factor") = 8);

  py::class_<PeakList>(m, "PeakList")
      .def_readonly("freqs_hz", &PeakList::freqs_hz)
      .def_readonly("magnitudes", &PeakList::magnitudes)
      .def_readonly("fewer_than_requested", &PeakList::fewer_than_requested);

  m.def("find_peaks", &find_peaks, py::arg("spectrum"), py::arg("n_peaks"),
        py::arg("min_separation_hz"));

  py::class_<ModeIndices>(m, "ModeIndices")
      .def(py::init([](int mm, int nn, int pp) {
             return ModeIndices{mm, nn, pp};
           }),
           py::arg("m"), py::arg("n"), py::arg("p") = 0)
      .def_readonly("m", &ModeIndices::m)
      .def_readonly("n", &ModeIndices::n)
      .def_readonly("p", &ModeIndices::p);

  m.def(
      "analytic_resonance",
      [](const std::array<double, 3>& dims, int dim, ModeFamily fam,
         const ModeIndices& mode, double eps_r, double mu_r) {
        return analytic_resonance(dims, dim, fam, mode, eps_r, mu_r);
      },
      py::arg("dims_m"), py::arg("dim"), py::arg("family"), py::arg("mode"),
      py::arg("eps_r") = 1.0, py::arg("mu_r") = 1.0);

  // experiments
  py::class_<PropagationErrorRow>(m, "PropagationErrorRow")
      .def_readonly("s", &PropagationErrorRow::s)
      .def_readonly("l2", &PropagationErrorRow::l2)
      .def_readonly("linf", &PropagationErrorRow::linf);

  m.def(
      "exp_1d_propagation",
      [](Scheme sch, const std::vector<double>& svals) {
        return exp_1d_propagation(sch, svals);
      },
      py::arg("scheme"), py::arg("s_values"));

  py::class_<Waveform1D>(m, "Waveform1D")
      .def_readonly("s", &Waveform1D::s)
      .def_readonly("dt", &Waveform1D::dt)
      .def_readonly("t", &Waveform1D::t)
      .def_readonly("numeric", &Waveform1D::numeric)
      .def_readonly("analytic", &Waveform1D::analytic)
      .def_readonly("l2", &Waveform1D::l2)
      .def_readonly("linf", &Waveform1D::linf);

  m.def(
      "run_1d_waveform",
      [](Scheme sch, double s) { return run_1d_waveform(sch, s); },
      py::arg("scheme"), py::arg("s"));

  py::class_<AnalyticMode>(m, "AnalyticMode")
      .def_readonly("mode", &AnalyticMode::mode)
      .def_readonly("family", &AnalyticMode::family)
      .def_readonly("f_ref_hz", &AnalyticMode::f_ref_hz)
      .def_readonly("degeneracy", &AnalyticMode::degeneracy);

  py::class_<CavityRow>(m, "CavityRow")
      .def_readonly("s", &CavityRow::s)
      .def_readonly("mode", &CavityRow::mode)
      .def_readonly("f_meas_hz", &CavityRow::f_meas_hz)
      .def_readonly("rel_error", &CavityRow::rel_error)
      .def_readonly("matched", &CavityRow::matched);

  py::class_<CavityConfig>(m, "CavityConfig")
      .def(py::init<>())
      .def_readwrite("delta", &CavityConfig::delta)
      .def_readwrite("steps_base", &CavityConfig::steps_base)
      .def_readwrite("pad_factor", &CavityConfig::pad_factor)
      .def_readwrite("seed", &CavityConfig::seed)
      .def_readwrite("n_tracked", &CavityConfig::n_tracked);

  m.def(
      "exp_cavity_2d",
      [](Scheme sch, Polarization pol, const std::vector<double>& svals,
         const CavityConfig& cfg) {
        return exp_cavity_2d(sch, pol, svals, cfg);
      },
      py::arg("scheme"), py::arg("polarization"), py::arg("s_values"),
      py::arg("config") = CavityConfig{});

  m.def(
      "exp_cavity_3d",
      [](Scheme sch, const std::vector<double>& svals, const CavityConfig& cfg) {
        return exp_cavity_3d(sch, svals, cfg);
      },
      py::arg("scheme"), py::arg("s_values"), py::arg("config") = CavityConfig{});

  m.def("lowest_nondegenerate_modes_2d", &lowest_nondegenerate_modes_2d,
        py::arg("family"), py::arg("a"), py::arg("b"), py::arg("count"));

  m.def("lowest_mode_groups_3d", &lowest_mode_groups_3d, py::arg("dims"),
        py::arg("count"));

  py::class_<SourceSpec>(m, "SourceSpec")
      .def(py::init<>())
      .def_readwrite("amplitude", &SourceSpec::amplitude)
      .def_readwrite("exponent_coeff", &SourceSpec::exponent_coeff)
      .def_readwrite("offset_m", &SourceSpec::offset_m)
      .def("waveform", &SourceSpec::waveform, py::arg("t"));

  m.def("representative_frequency", &representative_frequency,
        py::arg("source") = SourceSpec{});

  py::class_<DispersionMapRow>(m, "DispersionMapRow")
      .def_readonly("s", &DispersionMapRow::s)
      .def_readonly("theta", &DispersionMapRow::theta)
      .def_readonly("phi", &DispersionMapRow::phi)
      .def_readonly("k_exact", &DispersionMapRow::k_exact)
      .def_readonly("k_num", &DispersionMapRow::k_num)
      .def_readonly("vp_ratio", &DispersionMapRow::vp_ratio)
      .def_readonly("nde", &DispersionMapRow::nde)
      .def_readonly("status", &DispersionMapRow::status);

  m.def(
      "dispersion_map",
      [](Scheme sch, const GridSpec& g, const WaveSpec& w,
         const std::vector<double>& svals, std::optional<double> theta_fixed,
         std::optional<double> phi_fixed, int n_theta, int n_phi) {
        return dispersion_map(sch, g, w, svals, theta_fixed, phi_fixed,
                              n_theta, n_phi);
      },
      py::arg("scheme"), py::arg("grid"), py::arg("wave"), py::arg("s_values"),
      py::arg("theta_fixed_rad") = std::nullopt,
      py::arg("phi_fixed_rad") = std::nullopt, py::arg("n_theta") = 31,
      py::arg("n_phi") = 61);
}
