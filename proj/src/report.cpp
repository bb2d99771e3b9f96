#include "fnn/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace fnn {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const double kSqrt13 = std::sqrt(13.0);
const double kTheta3Star = std::acos(3.0 / std::sqrt(13.0));
constexpr double kDefaultTheta3 = 0.2122;
constexpr double kDefaultTheta5 = 0.2929;

using KeyValues = std::vector<std::pair<std::string, std::string>>;

double bisect_g(const std::function<bool(double)>& above, double lo, double hi,
                double width) {
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ScenarioConfig tied(double t3, double t5, double g, double v) {
  return ScenarioConfig::make({kPi / 2.0, 0.0, t3, -t3, t5, -t5}, g, v, v);
}

void require_agreement(const ScenarioConfig& config) {
  if (pipeline_closed_form_gap(config) > 1e-9)
    throw std::runtime_error(
        "pipeline and closed-form witness values disagree beyond 1e-9");
}

void write_key_values(const std::filesystem::path& path, const KeyValues& kv) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  for (const auto& [k, v] : kv) f << k << " = " << v << "\n";
}

void print_key_values(std::ostream& out, const KeyValues& kv) {
  for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
}

std::vector<double> parse_angle_list(const std::string& csv) {
  std::vector<double> angles;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    angles.push_back(std::stod(tok, &used));
    if (used != tok.size())
      throw std::invalid_argument("bad angle token: " + tok);
  }
  if (angles.size() != 4 && angles.size() != 6)
    throw std::invalid_argument("--angles expects 4 or 6 comma-separated radians");
  return angles;
}

std::vector<double> make_grid(double gmin, double gmax, int steps) {
  if (!(gmin >= 0.0 && gmax <= 1.0 && gmin <= gmax))
    throw std::invalid_argument("grid bounds must satisfy 0 <= g-min <= g-max <= 1");
  if (steps < 1) throw std::invalid_argument("--g-steps must be positive");
  std::vector<double> grid;
  grid.reserve(steps);
  if (steps == 1) {
    grid.push_back(gmin);
  } else {
    for (int k = 0; k < steps; ++k)
      grid.push_back(gmin + k * (gmax - gmin) / (steps - 1));
  }
  return grid;
}

int cmd_max_violation(const std::optional<std::string>& angles_csv,
                      double visibility, const std::filesystem::path& out_path,
                      std::ostream& out) {
  KeyValues kv;
  kv.emplace_back("command", "max-violation");
  if (angles_csv) {
    std::vector<double> a = parse_angle_list(*angles_csv);
    std::array<double, 6> full{};
    for (std::size_t k = 0; k < a.size(); ++k) full[k] = a[k];
    const ScenarioConfig config =
        ScenarioConfig::make(full, 1.0, visibility, visibility);
    require_agreement(config);
    const KgtValues vals = closed_form_kgt(config);
    kv.emplace_back("value", format_sig(vals.r1()));
    kv.emplace_back("r_cns_1", format_sig(vals.r_cns_1));
    kv.emplace_back("r_nsc_1", format_sig(vals.r_nsc_1));
    if (a.size() == 6) {
      kv.emplace_back("r_cns_2", format_sig(vals.r_cns_2));
      kv.emplace_back("r_nsc_2", format_sig(vals.r_nsc_2));
    }
    kv.emplace_back("violating", vals.r1() > 3.0 ? "yes" : "no");
  } else {
    const OptimizationResult opt = standard_max(visibility, visibility);
    const double t3 = opt.best_angles[0];
    require_agreement(tied(t3, 0.0, 1.0, visibility));
    kv.emplace_back("max_value", format_sig(opt.best_value));
    kv.emplace_back("theta1", format_sig(kPi / 2.0));
    kv.emplace_back("theta2", format_sig(0.0));
    kv.emplace_back("theta3", format_sig(t3));
    kv.emplace_back("theta4", format_sig(-t3));
    kv.emplace_back("violating", opt.best_value > 3.0 ? "yes" : "no");

    // the earlier known violation point, same network, diagonal settings
    const ScenarioConfig prior = tied(kPi / 4.0, 0.0, 1.0, visibility);
    require_agreement(prior);
    const auto [p_cns, p_nsc] = closed_form_r1(prior);
    kv.emplace_back("comparison_value", format_sig(std::min(p_cns, p_nsc)));
    kv.emplace_back("comparison_theta", format_sig(kPi / 4.0));
  }
  print_key_values(out, kv);
  write_key_values(out_path, kv);
  return 0;
}

int cmd_sweep(const std::string& mode, double gmin, double gmax, int steps,
              double theta3, double theta5, double visibility,
              const std::filesystem::path& out_path, std::ostream& out) {
  const std::vector<double> grid = make_grid(gmin, gmax, steps);
  std::vector<SweepRecord> records;
  records.reserve(grid.size());

  if (mode == "passive") {
    for (double g : grid) records.push_back(passive_analysis(g, visibility, visibility));
  } else if (mode == "active") {
    for (double g : grid) records.push_back(active_analysis(g, visibility, visibility));
  } else if (mode == "fixed-angle") {
    records = fixed_angle_sweep(theta3, theta5, grid, visibility, visibility);
    for (double g : grid) require_agreement(tied(theta3, theta5, g, visibility));
  } else {
    throw std::invalid_argument("unknown sweep mode: " + mode);
  }

  write_sweep_csv(out_path, records);
  out << "mode = " << mode << "\n";
  out << "rows = " << records.size() << "\n";
  out << "csv = " << out_path.string() << "\n";

  const double vv = visibility * visibility;
  if (mode == "passive") {
    auto r1 = [&](double g) { return vv * kSqrt13 * g; };
    auto r2 = [&](double g) {
      return vv * kt_coefficients(kTheta3Star, std::sqrt(1.0 - g * g)).bound();
    };
    const double gx = bisect_g([&](double g) { return r1(g) > r2(g); }, 0.0, 1.0, 1e-7);
    out << "max_min = " << format_sig(std::min(r1(gx), r2(gx))) << "\n";
    out << "max_min_g = " << format_sig(gx) << "\n";
    out << "r1_above_3_from_g = "
        << format_sig(bisect_g([&](double g) { return r1(g) > 3.0; }, 0.0, 1.0, 1e-5))
        << "\n";
    out << "r2_above_3_until_g = "
        << format_sig(bisect_g([&](double g) { return !(r2(g) > 3.0); }, 0.0, 1.0, 1e-5))
        << "\n";
  } else if (mode == "active") {
    const auto [g_peak, peak] = active_peak(visibility, visibility);
    out << "peak = " << format_sig(peak) << "\n";
    out << "peak_g = " << format_sig(g_peak) << "\n";
    if (peak > 3.0)
      out << "window_low = " << format_sig(active_window_lower_edge(visibility, visibility))
          << "\n";
  } else {
    const auto [wlo, whi] = fixed_angle_window(theta3, theta5, visibility, visibility);
    if (wlo <= whi) {
      out << "window_low = " << format_sig(wlo) << "\n";
      out << "window_high = " << format_sig(whi) << "\n";
    } else {
      out << "window = empty\n";
    }
    const auto [olo, ohi] = fixed_theta3_window(theta3, visibility, visibility);
    if (olo <= ohi) {
      out << "window_theta5_optimal_low = " << format_sig(olo) << "\n";
      out << "window_theta5_optimal_high = " << format_sig(ohi) << "\n";
    }
  }
  return 0;
}

int cmd_noise(const std::optional<std::string>& mode,
              std::optional<double> visibility, bool check,
              const std::filesystem::path& out_path, std::ostream& out) {
  const bool do_standard = !mode || *mode == "standard";
  const bool do_active = !mode || *mode == "active";
  if (!do_standard && !do_active)
    throw std::invalid_argument("unknown noise mode: " + *mode);

  KeyValues kv;
  kv.emplace_back("command", "noise");
  if (check) {
    const double v = visibility.value_or(1.0);
    if (do_standard) {
      const double value = standard_max(v, v).best_value;
      kv.emplace_back("standard_value", format_sig(value));
      kv.emplace_back("standard_violating", value > 3.0 ? "violating" : "non-violating");
    }
    if (do_active) {
      const double value = active_peak(v, v).second;
      kv.emplace_back("active_value", format_sig(value));
      kv.emplace_back("active_violating", value > 3.0 ? "violating" : "non-violating");
    }
  } else {
    if (do_standard) {
      kv.emplace_back("standard_v_star", format_sig(noise_threshold(NoiseMode::kStandardFnn)));
      kv.emplace_back("standard_residual", format_sig(5e-6));
    }
    if (do_active) {
      kv.emplace_back("active_v_star", format_sig(noise_threshold(NoiseMode::kActiveSharing)));
      kv.emplace_back("active_residual", format_sig(5e-6));
    }
  }
  print_key_values(out, kv);
  write_key_values(out_path, kv);
  return 0;
}

int cmd_reproduce_all(const std::filesystem::path& dir, double tolerance,
                      std::ostream& out) {
  std::filesystem::create_directories(dir);

  cmd_max_violation(std::nullopt, 1.0, dir / "max_violation.txt", out);
  cmd_sweep("passive", 0.7, 0.9, 41, kDefaultTheta3, kDefaultTheta5, 1.0,
            dir / "sweep_passive.csv", out);
  cmd_sweep("active", 0.8, 1.0, 41, kDefaultTheta3, kDefaultTheta5, 1.0,
            dir / "sweep_active.csv", out);
  cmd_sweep("fixed-angle", 0.8, 1.0, 41, kDefaultTheta3, kDefaultTheta5, 1.0,
            dir / "sweep_fixed_angle.csv", out);
  cmd_noise(std::nullopt, std::nullopt, false, dir / "noise.txt", out);

  const std::vector<PaperCheck> checks = paper_checks(tolerance);
  int failures = 0;
  {
    std::ofstream f(dir / "checks.txt");
    if (!f) throw std::runtime_error("cannot write checks.txt");
    for (const PaperCheck& c : checks) {
      const bool ok = c.pass();
      failures += ok ? 0 : 1;
      std::ostringstream line;
      line << (ok ? "PASS" : "FAIL") << " " << c.name << " value=" << format_sig(c.value)
           << " target=" << format_sig(c.target) << " tol=" << format_sig(c.tolerance);
      f << line.str() << "\n";
      out << line.str() << "\n";
    }
  }

  RunManifest manifest;
  manifest.command = "reproduce-all";
  manifest.parameters["out"] = dir.string();
  manifest.parameters["tolerance"] =
      tolerance > 0.0 ? format_sig(tolerance) : "default";
  manifest.outputs = {"max_violation.txt",   "sweep_passive.csv",
                      "sweep_active.csv",    "sweep_fixed_angle.csv",
                      "noise.txt",           "checks.txt"};
  for (const std::string& name : manifest.outputs)
    manifest.checksums[name] = file_checksum(dir / name);
  {
    std::ofstream f(dir / "manifest.json");
    if (!f) throw std::runtime_error("cannot write manifest.json");
    f << manifest.to_json() << "\n";
  }

  out << "outputs = " << manifest.outputs.size() + 1 << "\n";
  out << "failures = " << failures << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_checksum(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return fnv1a64_hex(ss.str());
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["parameters"] = parameters;
  j["outputs"] = outputs;
  j["checksums"] = checksums;
  return j.dump(2);
}

bool RunManifest::verify(const std::filesystem::path& dir) const {
  for (const std::string& name : outputs) {
    const std::filesystem::path p = dir / name;
    if (!std::filesystem::exists(p)) return false;
    auto it = checksums.find(name);
    if (it == checksums.end() || file_checksum(p) != it->second) return false;
  }
  return true;
}

std::vector<PaperCheck> paper_checks(double tolerance_override) {
  std::vector<PaperCheck> checks;
  auto add = [&](std::string name, double value, double target, double tol) {
    checks.push_back({std::move(name), value, target,
                      tolerance_override > 0.0 ? tolerance_override : tol});
  };

  const OptimizationResult opt = standard_max();
  add("standard_max", opt.best_value, 3.6055, 5e-4);
  add("standard_theta3", opt.best_angles[0], 0.5880, 5e-3);

  const auto [p_cns, p_nsc] = closed_form_r1(tied(kPi / 4.0, 0.0, 1.0, 1.0));
  add("comparison_point", std::min(p_cns, p_nsc), 3.5355, 5e-4);

  auto passive_r1 = [](double g) { return kSqrt13 * g; };
  auto passive_r2 = [](double g) {
    return kt_coefficients(kTheta3Star, std::sqrt(1.0 - g * g)).bound();
  };
  const double gx = bisect_g(
      [&](double g) { return passive_r1(g) > passive_r2(g); }, 0.0, 1.0, 1e-7);
  add("passive_max", std::min(passive_r1(gx), passive_r2(gx)), 2.9596, 5e-4);
  add("passive_g", gx, 0.8208, 5e-3);
  add("r1_violation_edge",
      bisect_g([&](double g) { return passive_r1(g) > 3.0; }, 0.0, 1.0, 1e-5),
      0.8321, 1e-3);
  add("r2_violation_edge",
      bisect_g([&](double g) { return !(passive_r2(g) > 3.0); }, 0.0, 1.0, 1e-5),
      0.8014, 1e-3);

  const auto [g_peak, peak] = active_peak();
  add("active_max", peak, 3.0521, 5e-4);
  add("active_peak_g", g_peak, 0.91, 5e-3);
  const SweepRecord rec91 = active_analysis(0.91);
  add("active_value_at_g091", rec91.r_m, 3.0521, 5e-4);
  add("active_theta3_at_g091", rec91.angles[2], 0.2122, 5e-3);
  add("active_theta5_at_g091", rec91.angles[4], 0.2929, 5e-3);
  add("active_window_low", active_window_lower_edge(), 0.84, 5e-3);

  const auto [wlo, whi] = fixed_angle_window(kDefaultTheta3, kDefaultTheta5);
  (void)whi;
  add("fixed_window_low", wlo, 0.8945, 1e-3);
  const auto [olo, ohi] = fixed_theta3_window(kDefaultTheta3);
  (void)olo;
  add("fixed_window_high", ohi, 0.9431, 1e-3);

  add("noise_standard", noise_threshold(NoiseMode::kStandardFnn), 0.912, 1e-3);
  add("noise_active", noise_threshold(NoiseMode::kActiveSharing), 0.9914, 1e-3);
  return checks;
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepRecord>& records) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << "g,r1,r2,r_m,theta3,theta5\n";
  for (const SweepRecord& r : records)
    f << format_sig(r.g) << "," << format_sig(r.r1) << "," << format_sig(r.r2)
      << "," << format_sig(r.r_m) << "," << format_sig(r.angles[2]) << ","
      << format_sig(r.angles[4]) << "\n";
}

namespace cli {

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact simulator and max-min optimizer for sequential-observer "
               "network nonlocality witnesses"};
  app.name("fnn");

  auto* max_cmd = app.add_subcommand(
      "max-violation", "Optimized standard-scenario witness maximum");
  std::optional<std::string> angles_csv;
  double max_visibility = 1.0;
  std::string max_out = "max_violation.txt";
  max_cmd->add_option("--angles", angles_csv,
                      "evaluate at fixed angles (radians, theta1..theta4 or theta1..theta6)");
  max_cmd->add_option("--visibility", max_visibility, "source visibility V1 = V2")
      ->check(CLI::Range(0.0, 1.0));
  max_cmd->add_option("--out", max_out, "summary file path");

  auto* sweep_cmd = app.add_subcommand("sweep", "Witness values across a grid of g");
  std::string sweep_mode;
  std::optional<double> gmin, gmax;
  std::optional<int> gsteps;
  double sweep_theta3 = kDefaultTheta3, sweep_theta5 = kDefaultTheta5;
  double sweep_visibility = 1.0;
  std::optional<std::string> sweep_out;
  sweep_cmd->add_option("--mode", sweep_mode, "passive | active | fixed-angle")
      ->required()
      ->check(CLI::IsMember({"passive", "active", "fixed-angle"}));
  sweep_cmd->add_option("--g-min", gmin, "lower grid bound");
  sweep_cmd->add_option("--g-max", gmax, "upper grid bound");
  sweep_cmd->add_option("--g-steps", gsteps, "number of grid points");
  sweep_cmd->add_option("--theta3", sweep_theta3, "Charlie1 angle (fixed-angle mode)");
  sweep_cmd->add_option("--theta5", sweep_theta5, "Charlie2 angle (fixed-angle mode)");
  sweep_cmd->add_option("--visibility", sweep_visibility, "source visibility V1 = V2")
      ->check(CLI::Range(0.0, 1.0));
  sweep_cmd->add_option("--out", sweep_out, "CSV output path");

  auto* noise_cmd = app.add_subcommand("noise", "Critical source visibility");
  std::optional<std::string> noise_mode;
  std::optional<double> noise_visibility;
  bool noise_check = false;
  std::string noise_out = "noise.txt";
  noise_cmd->add_option("--mode", noise_mode, "standard | active (default: both)")
      ->check(CLI::IsMember({"standard", "active"}));
  noise_cmd->add_option("--visibility", noise_visibility, "visibility for --check")
      ->check(CLI::Range(0.0, 1.0));
  noise_cmd->add_flag("--check", noise_check, "report whether the given visibility violates");
  noise_cmd->add_option("--out", noise_out, "summary file path");

  auto* repro_cmd = app.add_subcommand(
      "reproduce-all", "Run every analysis with default parameters and compare");
  std::optional<std::string> repro_out;
  double repro_tolerance = 0.0;
  repro_cmd->add_option("--out", repro_out, "output directory");
  repro_cmd->add_option("--tolerance", repro_tolerance,
                        "override every comparison tolerance");

  app.require_subcommand(1);

  std::vector<const char*> argv;
  argv.push_back("fnn");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*max_cmd)
      return cmd_max_violation(angles_csv, max_visibility, max_out, out);
    if (*sweep_cmd) {
      double lo = gmin.value_or(sweep_mode == "passive" ? 0.7 : 0.8);
      double hi = gmax.value_or(sweep_mode == "passive" ? 0.9 : 1.0);
      int steps = gsteps.value_or(41);
      std::string path = sweep_out.value_or(
          "sweep_" + (sweep_mode == "fixed-angle" ? std::string("fixed_angle")
                                                  : sweep_mode) +
          ".csv");
      return cmd_sweep(sweep_mode, lo, hi, steps, sweep_theta3, sweep_theta5,
                       sweep_visibility, path, out);
    }
    if (*noise_cmd)
      return cmd_noise(noise_mode, noise_visibility, noise_check, noise_out, out);
    if (*repro_cmd) {
      std::string dir;
      if (repro_out) {
        dir = *repro_out;
      } else {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::tm tm_utc{};
        gmtime_r(&tt, &tm_utc);
        std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm_utc);
        dir = std::string("fnn-repro-") + buf;
      }
      return cmd_reproduce_all(dir, repro_tolerance, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cli

}  // namespace fnn
