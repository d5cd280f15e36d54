#include "fdtdlab/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace fdtdlab {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string probe_series_csv(std::span<const double> t_seconds,
                             std::span<const double> values) {
  if (t_seconds.size() != values.size())
    throw std::invalid_argument("probe_series_csv: length mismatch");
  std::string out = "t_seconds,value\n";
  for (size_t i = 0; i < t_seconds.size(); ++i) {
    out += format_value(t_seconds[i]);
    out += ',';
    out += format_value(values[i]);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace fdtdlab
