#include "fdtdlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fdtdlab {

namespace detail {

void fft_pow2(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_pow2: size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

double window_value(WindowKind window, size_t i, size_t n) {
  if (window == WindowKind::rectangular) return 1.0;
  return 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(i) /
                               static_cast<double>(n - 1)));
}

}  // namespace detail

Spectrum spectrum(std::span<const double> series, double dt, int pad_factor,
                  WindowKind window) {
  if (series.size() < 16)
    throw SeriesTooShortError("spectrum: need at least 16 samples");
  if (pad_factor < 1)
    throw std::invalid_argument("spectrum: pad_factor must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("spectrum: dt must be > 0");

  size_t n_padded = 1;
  while (n_padded < series.size() * static_cast<size_t>(pad_factor))
    n_padded <<= 1;

  std::vector<std::complex<double>> buf(n_padded, {0.0, 0.0});
  for (size_t i = 0; i < series.size(); ++i)
    buf[i] = series[i] * detail::window_value(window, i, series.size());
  detail::fft_pow2(buf);

  Spectrum s;
  s.dt = dt;
  s.n_padded = n_padded;
  s.n_series = series.size();
  s.bin_hz = 1.0 / (static_cast<double>(n_padded) * dt);
  const size_t half = n_padded / 2;
  s.freq_hz.resize(half + 1);
  s.magnitude.resize(half + 1);
  for (size_t k = 0; k <= half; ++k) {
    s.freq_hz[k] = static_cast<double>(k) * s.bin_hz;
    s.magnitude[k] = std::abs(buf[k]);
  }
  return s;
}

PeakList find_peaks(const Spectrum& spec, int n_peaks, double min_separation_hz) {
  if (n_peaks < 1) throw std::invalid_argument("find_peaks: n_peaks must be >= 1");
  const auto& mag = spec.magnitude;
  double max_mag = 0.0;
  for (double m : mag) max_mag = std::max(max_mag, m);

  struct Candidate {
    double f, m;
  };
  std::vector<Candidate> cands;
  // local maxima, DC bin excluded; noise floor cut keeps the list short
  const double floor_cut = 1e-12 * max_mag;
  for (size_t k = 1; k + 1 < mag.size(); ++k) {
    if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] && mag[k] > floor_cut) {
      double f = spec.freq_hz[k];
      if (mag[k - 1] > 0.0 && mag[k + 1] > 0.0) {
        const double la = std::log(mag[k - 1]);
        const double lb = std::log(mag[k]);
        const double lc = std::log(mag[k + 1]);
        const double den = la - 2.0 * lb + lc;
        if (den < 0.0) {
          const double d = 0.5 * (la - lc) / den;
          f += d * spec.bin_hz;
        }
      }
      cands.push_back({f, mag[k]});
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.m > b.m; });

  std::vector<Candidate> kept;
  for (const auto& c : cands) {
    bool close = false;
    for (const auto& k : kept)
      if (std::abs(k.f - c.f) < min_separation_hz) {
        close = true;  // a taller peak already owns this neighborhood
        break;
      }
    if (!close) kept.push_back(c);
    if (static_cast<int>(kept.size()) == n_peaks) break;
  }

  PeakList out;
  out.fewer_than_requested = static_cast<int>(kept.size()) < n_peaks;
  std::sort(kept.begin(), kept.end(),
            [](const Candidate& a, const Candidate& b) { return a.f < b.f; });
  for (const auto& k : kept) {
    out.freqs_hz.push_back(k.f);
    out.magnitudes.push_back(k.m);
  }
  return out;
}

double analytic_resonance(const std::array<double, 3>& dims_m, int dim,
                          ModeFamily family, ModeIndices mode, double eps_r,
                          double mu_r) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("analytic_resonance: dim must be 2 or 3");
  const int m = mode.m, n = mode.n, p = mode.p;
  if (m < 0 || n < 0 || p < 0)
    throw InvalidModeIndicesError("analytic_resonance: negative mode index");
  if (dim == 2) {
    if (p != 0) throw InvalidModeIndicesError("analytic_resonance: p must be 0 in 2-D");
    if (family == ModeFamily::tm && (m < 1 || n < 1))
      throw InvalidModeIndicesError("analytic_resonance: 2-D TM needs m,n >= 1");
    if (family == ModeFamily::te && m + n < 1)
      throw InvalidModeIndicesError("analytic_resonance: 2-D TE needs m+n >= 1");
  } else {
    if (family == ModeFamily::tm && (m < 1 || n < 1))
      throw InvalidModeIndicesError("analytic_resonance: 3-D TM needs m,n >= 1");
    if (family == ModeFamily::te && (p < 1 || m + n < 1))
      throw InvalidModeIndicesError(
          "analytic_resonance: 3-D TE needs p >= 1 and m+n >= 1");
  }
  double sum = (m / dims_m[0]) * (m / dims_m[0]) +
               (n / dims_m[1]) * (n / dims_m[1]);
  if (dim == 3) sum += (p / dims_m[2]) * (p / dims_m[2]);
  return c0 / (2.0 * std::sqrt(eps_r * mu_r)) * std::sqrt(sum);
}

ResonanceReport match_and_score(const PeakList& peaks,
                                std::span<const AnalyticMode> modes,
                                double estimator_resolution_hz) {
  if (modes.empty())
    throw std::invalid_argument("match_and_score: need at least one mode");
  std::vector<AnalyticMode> sorted(modes.begin(), modes.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const AnalyticMode& a, const AnalyticMode& b) {
              return a.f_ref_hz < b.f_ref_hz;
            });
  std::vector<bool> used(peaks.freqs_hz.size(), false);

  ResonanceReport report;
  report.estimator_resolution_hz = estimator_resolution_hz;
  for (const auto& mode : sorted) {
    ResonanceEntry e;
    e.mode = mode.mode;
    e.f_ref_hz = mode.f_ref_hz;
    int best = -1;
    double best_d = 0.05 * mode.f_ref_hz;  // matching window
    for (size_t i = 0; i < peaks.freqs_hz.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(peaks.freqs_hz[i] - mode.f_ref_hz);
      if (d <= best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) {
      used[best] = true;
      e.matched = true;
      e.f_meas_hz = peaks.freqs_hz[best];
      e.rel_error = std::abs(e.f_ref_hz - e.f_meas_hz) / e.f_ref_hz;
    }
    report.entries.push_back(e);
  }
  return report;
}

std::string to_csv(const ResonanceReport& report) {
  std::string out = "m,n,p,f_ref_hz,f_meas_hz,rel_error\n";
  char line[160];
  for (const auto& e : report.entries) {
    std::snprintf(line, sizeof line, "%d,%d,%d,%.17g,%.17g,%.17g\n", e.mode.m,
                  e.mode.n, e.mode.p, e.f_ref_hz, e.matched ? e.f_meas_hz : 0.0,
                  e.matched ? e.rel_error : -1.0);
    out += line;
  }
  return out;
}

std::string to_json(const ResonanceReport& report) {
  std::ostringstream os;
  os << "{\"estimator_resolution_hz\":" << report.estimator_resolution_hz
     << ",\"modes\":[";
  for (size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    if (i) os << ",";
    os << "{\"m\":" << e.mode.m << ",\"n\":" << e.mode.n << ",\"p\":" << e.mode.p
       << ",\"f_ref_hz\":" << e.f_ref_hz << ",\"matched\":" << (e.matched ? "true" : "false")
       << ",\"f_meas_hz\":" << e.f_meas_hz << ",\"rel_error\":" << e.rel_error << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace fdtdlab
