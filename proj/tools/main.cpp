// fdtdlab command-line front end: dispersion maps, optimal time steps and
// the 1-D/2-D/3-D validation experiments, with CSV outputs and a JSON
// manifest sidecar per run.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fdtdlab/dispersion.hpp"
#include "fdtdlab/experiments.hpp"
#include "fdtdlab/io.hpp"
#include "fdtdlab/spectral.hpp"
#include "fdtdlab/yee.hpp"
#include "json.hpp"

using namespace fdtdlab;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitUsage = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitInstability = 4;

// "0.1:1.0:0.1" (inclusive range) or "0.5,0.7,1.0"
std::vector<double> parse_s_list(const std::string& text) {
  std::vector<double> out;
  const auto colon1 = text.find(':');
  if (colon1 != std::string::npos) {
    const auto colon2 = text.find(':', colon1 + 1);
    if (colon2 == std::string::npos)
      throw CLI::ValidationError("--s-list", "range must be start:stop:step");
    const double start = std::stod(text.substr(0, colon1));
    const double stop = std::stod(text.substr(colon1 + 1, colon2 - colon1 - 1));
    const double step = std::stod(text.substr(colon2 + 1));
    if (step <= 0.0) throw CLI::ValidationError("--s-list", "step must be > 0");
    for (double s = start; s <= stop + 1e-12; s += step)
      out.push_back(std::round(s * 1e9) / 1e9);
  } else {
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("--s-list", "no values given");
  return out;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos)
    throw CLI::ValidationError("--grid", "expected n_theta x n_phi, e.g. 31x61");
  return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

Scheme parse_scheme(const std::string& name) {
  if (name == "fdtd22") return Scheme::fdtd22;
  if (name == "fdtd24") return Scheme::fdtd24;
  throw CLI::ValidationError("--scheme", "must be fdtd22 or fdtd24");
}

void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const json& config, std::uint64_t seed = 0) {
  json m;
  m["subcommand"] = subcommand;
  m["tool_version"] = kVersion;
  m["seed"] = seed;
  m["timestamp"] = iso8601_utc_now();
  m["config"] = config;
  write_text_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

struct SharedGridFlags {
  std::string scheme = "fdtd22";
  double freq_hz = 0.0;
  double dx = 0.0, dy = 0.0, dz = 0.0;
  int dim = 3;
  std::string s_list;
  std::string out;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--scheme", scheme, "scheme: fdtd22 or fdtd24")->required();
    cmd->add_option("--freq-hz", freq_hz, "wave frequency in Hz")->required();
    cmd->add_option("--dx", dx, "mesh size along x in meters")->required();
    cmd->add_option("--dy", dy, "mesh size along y in meters (defaults to dx)");
    cmd->add_option("--dz", dz, "mesh size along z in meters (defaults to dx)");
    cmd->add_option("--dim", dim, "dimensionality: 1, 2 or 3")
        ->check(CLI::Range(1, 3));
    cmd->add_option("--s-list", s_list,
                    "Courant fractions: comma list or start:stop:step")
        ->required();
    cmd->add_option("--out", out, "output CSV path")->required();
  }

  [[nodiscard]] GridSpec grid() const {
    return GridSpec(dx, dy > 0.0 ? dy : dx, dz > 0.0 ? dz : dx, dim);
  }

  [[nodiscard]] json config_json() const {
    return json{{"scheme", scheme}, {"freq_hz", freq_hz}, {"dx", dx},
                {"dy", dy > 0.0 ? dy : dx}, {"dz", dz > 0.0 ? dz : dx},
                {"dim", dim}, {"s_list", s_list}, {"out", out}};
  }
};

int cmd_dispersion_map(const SharedGridFlags& flags, const std::string& grid_text,
                       std::optional<double> theta_deg,
                       std::optional<double> phi_deg) {
  const Scheme scheme = parse_scheme(flags.scheme);
  const GridSpec grid = flags.grid();
  const WaveSpec wave = WaveSpec::from_frequency(flags.freq_hz, grid);
  const auto s_values = parse_s_list(flags.s_list);
  const auto [n_theta, n_phi] = parse_grid(grid_text);

  std::optional<double> th, ph;
  if (theta_deg) th = *theta_deg * pi / 180.0;
  if (phi_deg) ph = *phi_deg * pi / 180.0;

  const auto rows = dispersion_map(scheme, grid, wave, s_values, th, ph,
                                   n_theta, n_phi);
  size_t failed = 0;
  std::string csv = "s,theta_rad,phi_rad,k_exact,k_num,vp_ratio,nde\n";
  for (const auto& r : rows) {
    if (r.status != SolveStatus::ok) {
      ++failed;
      continue;
    }
    csv += format_value(r.s) + ',' + format_value(r.theta) + ',' +
           format_value(r.phi) + ',' + format_value(r.k_exact) + ',' +
           format_value(r.k_num) + ',' + format_value(r.vp_ratio) + ',' +
           format_value(r.nde) + '\n';
  }
  write_text_file(flags.out, csv);
  json cfg = flags.config_json();
  cfg["grid"] = grid_text;
  if (theta_deg) cfg["theta_deg"] = *theta_deg;
  if (phi_deg) cfg["phi_deg"] = *phi_deg;
  write_manifest(flags.out, "dispersion-map", cfg);
  if (failed > 0.01 * static_cast<double>(rows.size())) {
    std::cerr << "dispersion-map: " << failed << " of " << rows.size()
              << " points failed to solve\n";
    return kExitSolverFailure;
  }
  std::cout << "wrote " << flags.out << " (" << rows.size() - failed
            << " points, " << failed << " flagged)\n";
  return 0;
}

int cmd_optimal_dt(const SharedGridFlags& flags, const std::string& grid_text,
                   double search_tol) {
  const Scheme scheme = parse_scheme(flags.scheme);
  if (scheme == Scheme::fdtd22) {
    std::cerr << "optimal-dt: the fdtd22 dispersion error decreases "
                 "monotonically with S, so its optimum is pinned at S = 1 "
                 "(the CFL limit); no search is performed for this scheme\n";
    return kExitUsage;
  }
  const GridSpec grid = flags.grid();
  const WaveSpec wave = WaveSpec::from_frequency(flags.freq_hz, grid);
  const auto [n_theta, n_phi] = parse_grid(grid_text);

  const auto res = optimal_courant_24(scheme, grid, wave, n_theta, n_phi,
                                      search_tol);
  const double dt_opt = res.s_opt * cfl_max_dt(scheme, grid);
  std::cout << "s_opt = " << format_value(res.s_opt) << "\n"
            << "dt_opt_seconds = " << format_value(dt_opt) << "\n"
            << "objective = " << format_value(res.objective) << "\n";
  std::string csv = "s,objective\n";
  for (const auto& [s, obj] : res.trace)
    csv += format_value(s) + ',' + format_value(obj) + '\n';
  write_text_file(flags.out, csv);
  json cfg = flags.config_json();
  cfg["grid"] = grid_text;
  cfg["search_tol"] = search_tol;
  write_manifest(flags.out, "optimal-dt", cfg);
  return 0;
}

std::string s_tag(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  std::string t = buf;
  for (auto& c : t)
    if (c == '.') c = 'p';
  return t;
}

int cmd_run_1d(const std::string& scheme_name, const std::string& s_list,
               Propagation1DConfig cfg, const std::string& out) {
  const Scheme scheme = parse_scheme(scheme_name);
  const auto s_values = parse_s_list(s_list);
  std::string errors_csv = "s,l2,linf\n";
  for (double s : s_values) {
    const Waveform1D w = run_1d_waveform(scheme, s, cfg);
    write_text_file(out + "_s" + s_tag(s) + ".csv",
                    probe_series_csv(w.t, w.numeric));
    errors_csv += format_value(s) + ',' + format_value(w.l2) + ',' +
                  format_value(w.linf) + '\n';
  }
  write_text_file(out + "_errors.csv", errors_csv);
  write_manifest(out, "run-1d",
                 json{{"scheme", scheme_name},
                      {"s_list", s_list},
                      {"dx", cfg.dx},
                      {"nx", cfg.nx},
                      {"i_src", cfg.i_src},
                      {"i_probe", cfg.i_probe},
                      {"total_time", cfg.total_time}});
  std::cout << "wrote " << out << "_errors.csv and " << s_values.size()
            << " waveform files\n";
  return 0;
}

std::string cavity_csv(const std::vector<CavityRow>& rows) {
  std::string csv = "s,m,n,p,f_ref_hz,f_meas_hz,rel_error\n";
  for (const auto& r : rows)
    csv += format_value(r.s) + ',' + std::to_string(r.mode.mode.m) + ',' +
           std::to_string(r.mode.mode.n) + ',' + std::to_string(r.mode.mode.p) +
           ',' + format_value(r.mode.f_ref_hz) + ',' +
           format_value(r.matched ? r.f_meas_hz : 0.0) + ',' +
           format_value(r.matched ? r.rel_error : -1.0) + '\n';
  return csv;
}

int cmd_run_cavity(int dim, const std::string& scheme_name,
                   const std::string& pol_name, const std::string& s_list,
                   CavityConfig cfg, const std::string& out) {
  const Scheme scheme = parse_scheme(scheme_name);
  const auto s_values = parse_s_list(s_list);
  Polarization pol = Polarization::tm;
  if (dim == 2) {
    if (pol_name == "te")
      pol = Polarization::te;
    else if (pol_name != "tm")
      throw CLI::ValidationError("--pol", "must be tm or te");
  }
  try {
    const auto rows = dim == 2 ? exp_cavity_2d(scheme, pol, s_values, cfg)
                               : exp_cavity_3d(scheme, s_values, cfg);
    write_text_file(out, cavity_csv(rows));
  } catch (const InstabilityError& e) {
    double worst = 0.0;
    for (double s : s_values) worst = std::max(worst, s);
    std::cerr << "run-cavity" << dim << "d: instability at step "
              << e.step_index << " (s = " << worst
              << " exceeds the CFL limit)\n";
    return kExitInstability;
  }
  json cfg_json{{"scheme", scheme_name}, {"s_list", s_list},
                {"delta", cfg.delta},   {"steps_base", cfg.steps_base},
                {"pad_factor", cfg.pad_factor}, {"seed", cfg.seed},
                {"n_tracked", cfg.n_tracked}};
  if (dim == 2) cfg_json["pol"] = pol_name;
  write_manifest(out, dim == 2 ? "run-cavity2d" : "run-cavity3d", cfg_json,
                 cfg.seed);
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fdtdlab: numerical-dispersion analysis and Yee-grid "
               "validation experiments for FDTD(2,2) and FDTD(2,4)"};
  app.require_subcommand(1);

  SharedGridFlags map_flags;
  std::string map_grid = "31x61";
  double map_theta_deg = -1.0, map_phi_deg = -1.0;
  auto* map_cmd = app.add_subcommand(
      "dispersion-map", "scan numerical wavenumber over angles and S");
  map_flags.add_to(map_cmd);
  map_cmd->add_option("--grid", map_grid, "angle grid as n_theta x n_phi");
  auto* opt_th = map_cmd->add_option("--theta-deg", map_theta_deg,
                                     "fix theta at this angle in degrees");
  auto* opt_ph = map_cmd->add_option("--phi-deg", map_phi_deg,
                                     "fix phi at this angle in degrees");

  SharedGridFlags opt_flags;
  std::string opt_grid = "61x121";
  double search_tol = 1e-4;
  auto* opt_cmd = app.add_subcommand(
      "optimal-dt", "search the dispersion-optimal Courant fraction (fdtd24)");
  opt_flags.add_to(opt_cmd);
  opt_cmd->add_option("--grid", opt_grid, "quadrature grid as n_theta x n_phi");
  opt_cmd->add_option("--search-tol", search_tol,
                      "golden-section tolerance on S (dimensionless)");

  std::string r1_scheme, r1_slist, r1_out = "run1d";
  Propagation1DConfig r1_cfg;
  auto* r1_cmd = app.add_subcommand(
      "run-1d", "1-D Gaussian pulse propagation error versus S");
  r1_cmd->add_option("--scheme", r1_scheme, "scheme: fdtd22 or fdtd24")->required();
  r1_cmd->add_option("--s-list", r1_slist,
                     "Courant fractions: comma list or start:stop:step")
      ->required();
  r1_cmd->add_option("--dx", r1_cfg.dx, "mesh size in meters");
  r1_cmd->add_option("--nx", r1_cfg.nx, "cell count");
  r1_cmd->add_option("--total-time", r1_cfg.total_time,
                     "simulated time in seconds");
  r1_cmd->add_option("--i-src", r1_cfg.i_src, "hard-source node index");
  r1_cmd->add_option("--i-probe", r1_cfg.i_probe, "probe node index");
  r1_cmd->add_option("--out", r1_out, "output file prefix");

  std::string c2_scheme, c2_pol = "tm", c2_slist, c2_out = "cavity2d.csv";
  CavityConfig c2_cfg;
  auto* c2_cmd = app.add_subcommand(
      "run-cavity2d", "2-D PEC cavity resonance error versus S (1 m x 2 m)");
  c2_cmd->add_option("--scheme", c2_scheme, "scheme: fdtd22 or fdtd24")->required();
  c2_cmd->add_option("--pol", c2_pol, "polarization: tm or te");
  c2_cmd->add_option("--s-list", c2_slist,
                     "Courant fractions: comma list or start:stop:step")
      ->required();
  c2_cmd->add_option("--delta", c2_cfg.delta, "mesh size in meters");
  c2_cmd->add_option("--steps-base", c2_cfg.steps_base,
                     "time steps of the smallest-s run");
  c2_cmd->add_option("--seed", c2_cfg.seed, "excitation seed");
  c2_cmd->add_option("--out", c2_out, "output CSV path");

  std::string c3_scheme, c3_slist, c3_out = "cavity3d.csv";
  CavityConfig c3_cfg;
  auto* c3_cmd = app.add_subcommand(
      "run-cavity3d",
      "3-D cubic PEC cavity resonance error versus S (1 m side)");
  c3_cmd->add_option("--scheme", c3_scheme, "scheme: fdtd22 or fdtd24")->required();
  c3_cmd->add_option("--s-list", c3_slist,
                     "Courant fractions: comma list or start:stop:step")
      ->required();
  c3_cmd->add_option("--delta", c3_cfg.delta, "mesh size in meters");
  c3_cmd->add_option("--steps-base", c3_cfg.steps_base,
                     "time steps of the smallest-s run");
  c3_cmd->add_option("--seed", c3_cfg.seed, "excitation seed");
  c3_cmd->add_option("--out", c3_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (map_cmd->parsed()) {
      std::optional<double> th, ph;
      if (opt_th->count()) th = map_theta_deg;
      if (opt_ph->count()) ph = map_phi_deg;
      return cmd_dispersion_map(map_flags, map_grid, th, ph);
    }
    if (opt_cmd->parsed())
      return cmd_optimal_dt(opt_flags, opt_grid, search_tol);
    if (r1_cmd->parsed())
      return cmd_run_1d(r1_scheme, r1_slist, r1_cfg, r1_out);
    if (c2_cmd->parsed())
      return cmd_run_cavity(2, c2_scheme, c2_pol, c2_slist, c2_cfg, c2_out);
    if (c3_cmd->parsed())
      return cmd_run_cavity(3, c3_scheme, "", c3_slist, c3_cfg, c3_out);
  } catch (const InstabilityError& e) {
    std::cerr << "instability at step " << e.step_index << "\n";
    return kExitInstability;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
