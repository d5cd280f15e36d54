#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "fdtdlab/errors.hpp"
#include "fdtdlab/types.hpp"

namespace fdtdlab {

enum class WindowKind { hann, rectangular };

/// One-sided magnitude spectrum of a real time series.
struct Spectrum {
  std::vector<double> freq_hz;    // strictly increasing, freq[k] = k * bin_hz
  std::vector<double> magnitude;  // |X_k| of the windowed, zero-padded series
  double bin_hz = 0.0;            // 1 / (n_padded * dt)
  double dt = 0.0;
  size_t n_padded = 0;
  size_t n_series = 0;
};

/// Windowed, zero-padded discrete Fourier magnitude spectrum. The padded
/// length is pad_factor * series length rounded up to a power of two.
/// Throws SeriesTooShortError for fewer than 16 samples.
Spectrum spectrum(std::span<const double> series, double dt, int pad_factor = 8,
                  WindowKind window = WindowKind::hann);

struct PeakList {
  std::vector<double> freqs_hz;    // ascending
  std::vector<double> magnitudes;  // parallel to freqs_hz
  bool fewer_than_requested = false;
};

/// Local maxima of the magnitude spectrum ranked by height, refined by
/// 3-point parabolic interpolation on the log magnitude. The DC bin never
/// qualifies. Peaks closer than min_separation_hz are merged keeping the
/// larger. Returns what was found (flagged) when fewer than n_peaks exist.
PeakList find_peaks(const Spectrum& spec, int n_peaks, double min_separation_hz);

enum class ModeFamily { tm, te };

struct ModeIndices {
  int m = 0, n = 0, p = 0;
};

/// Analytic resonance of a rectangular PEC cavity:
/// f = c / (2 sqrt(eps_r mu_r)) * sqrt((m/a)^2 + (n/b)^2 [+ (p/d)^2]).
/// dims holds the cavity side lengths for the active dimensions (2 or 3).
/// Index validity is the standard one (2-D TM: m,n >= 1; 2-D TE: m+n >= 1;
/// 3-D TM: m,n >= 1, p >= 0; 3-D TE: p >= 1, m+n >= 1); violations throw
/// InvalidModeIndicesError.
double analytic_resonance(const std::array<double, 3>& dims_m, int dim,
                          ModeFamily family, ModeIndices mode,
                          double eps_r = 1.0, double mu_r = 1.0);

struct AnalyticMode {
  ModeIndices mode;
  ModeFamily family = ModeFamily::tm;
  double f_ref_hz = 0.0;
  int degeneracy = 1;  // modes sharing this frequency (reported as a group)
};

struct ResonanceEntry {
  ModeIndices mode;
  double f_ref_hz = 0.0;
  double f_meas_hz = 0.0;  // 0 when unmatched
  double rel_error = 0.0;  // |f_ref - f_meas| / f_ref
  bool matched = false;
};

struct ResonanceReport {
  std::vector<ResonanceEntry> entries;
  double estimator_resolution_hz = 0.0;  // spectral bin width of the source run
};

/// Greedy nearest-frequency matching: analytic modes in ascending frequency
/// each claim the closest unmatched peak within 5% of the analytic value.
/// Unmatched modes are listed, not raised.
ResonanceReport match_and_score(const PeakList& peaks,
                                std::span<const AnalyticMode> modes,
                                double estimator_resolution_hz = 0.0);

/// CSV export, columns: m,n,p,f_ref_hz,f_meas_hz,rel_error
std::string to_csv(const ResonanceReport& report);

/// JSON mirror of the CSV export.
std::string to_json(const ResonanceReport& report);

namespace detail {
/// In-place radix-2 complex FFT (size must be a power of two).
void fft_pow2(std::vector<std::complex<double>>& data);
/// Window sample w[i] for a series of length n.
double window_value(WindowKind window, size_t i, size_t n);
}  // namespace detail

}  // namespace fdtdlab
