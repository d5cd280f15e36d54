#pragma once

#include <span>
#include <string>

namespace fdtdlab {

/// Round-trip exact float formatting used by every CSV writer, so identical
/// configs produce byte-identical files.
std::string format_value(double v);

/// Probe series CSV: header `t_seconds,value`.
std::string probe_series_csv(std::span<const double> t_seconds,
                             std::span<const double> values);

void write_text_file(const std::string& path, const std::string& content);

std::string iso8601_utc_now();

}  // namespace fdtdlab
