// uwb-locsim: command-line front end for the UWB ranging/localization toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data/config error, 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "uwbsim/csv.hpp"
#include "uwbsim/distributions.hpp"
#include "uwbsim/energy.hpp"
#include "uwbsim/error.hpp"
#include "uwbsim/fitting.hpp"
#include "uwbsim/io.hpp"
#include "uwbsim/reference.hpp"
#include "uwbsim/simulator.hpp"
#include "uwbsim/solver.hpp"

namespace fs = std::filesystem;
using namespace uwbsim;
using io::Json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
}

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", out_path));
  out << text;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string input;
  std::string column;
  bool no_header = false;
  std::string families = "gaussian,burr12,lognormal";
  std::size_t bins = kDefaultBins;
  std::string out;
};

std::vector<double> read_column(const std::string& path, bool has_header, const std::string& column) {
  std::istringstream in(read_text(path));
  const CsvTable t = read_csv(in, has_header);
  std::size_t col = 0;
  if (!column.empty()) {
    if (auto c = t.column(column)) {
      col = *c;
    } else {
      try {
        col = std::stoul(column);
      } catch (const std::exception&) {
        throw ConfigError(fmt::format("{}: no column named '{}'", path, column));
      }
    }
  }
  std::vector<double> values;
  values.reserve(t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (col >= t.rows[i].size()) throw ConfigError(fmt::format("{}: line {} has no column {}", path, t.line_numbers[i], col));
    values.push_back(parse_double(t.rows[i][col], t.line_numbers[i]));
  }
  return values;
}

std::vector<Family> parse_families(const std::string& list) {
  std::vector<Family> fams;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) fams.push_back(family_from_string(item));
  }
  if (fams.empty()) throw DomainError("--families is empty");
  return fams;
}

int run_fit(const FitArgs& a) {
  const std::vector<double> data = read_column(a.input, !a.no_header, a.column);
  const std::vector<Family> fams = parse_families(a.families);
  const auto ranking = select_best_model(data, fams, a.bins);
  emit(a.out, io::fit_report(ranking, data.size(), a.bins).dump(2) + "\n");
  return 0;
}

struct SampleArgs {
  std::string dist;
  std::string model;
  std::size_t count = 1000;
  std::uint64_t seed = 42;
  std::string out;
};

int run_sample(const SampleArgs& a) {
  if (a.dist.empty() == a.model.empty()) throw ConfigError("give exactly one of --dist or --model");
  ErrorDistribution dist = Gaussian{};
  if (!a.model.empty()) {
    dist = reference::fitted_model(a.model);
  } else {
    const std::string text = fs::exists(a.dist) ? read_text(a.dist) : a.dist;
    try {
      dist = io::distribution_from_json(Json::parse(text));
    } catch (const Json::parse_error& e) {
      throw ConfigError(fmt::format("--dist: invalid JSON: {}", e.what()));
    }
  }
  RandomStream stream(derive_seed(a.seed, {}));
  std::string text = "error_m\n";
  for (std::size_t i = 0; i < a.count; ++i) text += format_double(sample(dist, stream)) + "\n";
  emit(a.out, text);
  return 0;
}

struct SolveArgs {
  std::string input = "-";
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const io::SolveRequest req = io::solve_request_from_json(read_json(a.input));
  const LocationEstimate est = solve(req.config, req.anchors, req.distances);
  emit(a.out, io::to_json(est).dump(2) + "\n");
  return 0;
}

struct SimulateArgs {
  std::string config;
  std::string preset;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  unsigned threads = 0;
};

int run_simulate(const SimulateArgs& a) {
  if (a.config.empty() == a.preset.empty()) throw ConfigError("give exactly one of --config or --preset");
  Scenario s;
  if (!a.preset.empty()) {
    auto p = io::preset_scenario(a.preset);
    if (!p) throw ConfigError(fmt::format("unknown preset '{}'", a.preset));
    s = std::move(*p);
  } else {
    s = io::scenario_from_json(read_json(a.config));
  }
  if (a.seed) s.seed = *a.seed;
  if (a.runs) s.runs = *a.runs;

  const RunStatistics stats = run_scenario(s, a.threads);
  const std::string report = io::run_report(s, stats).dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << report;
    return 0;
  }
  fs::create_directories(a.out);
  const fs::path dir(a.out);
  {
    std::ofstream f(dir / "points.csv", std::ios::binary);
    io::write_points_csv(f, stats);
  }
  {
    std::ofstream f(dir / "ecdf.csv", std::ios::binary);
    io::write_ecdf_csv(f, stats);
  }
  emit((dir / "report.json").string(), report);
  std::cerr << fmt::format("{}: median 2D error {:.4f} m over {} samples ({} failed)\n", s.name, stats.planar.median,
                           stats.planar.count, stats.failed);
  return 0;
}

struct RangeStatsArgs {
  std::string input;
  bool no_header = false;
  std::string out;
};

int run_range_stats(const RangeStatsArgs& a) {
  std::istringstream in(read_text(a.input));
  const CsvTable t = read_csv(in, !a.no_header);
  auto col = [&](const char* name, std::size_t fallback) -> std::optional<std::size_t> {
    if (!t.header.empty()) return t.column(name);
    if (!t.rows.empty() && fallback < t.rows.front().size()) return fallback;
    return std::nullopt;
  };
  const auto c_true = col("true_m", 0), c_meas = col("measured_m", 1);
  const auto c_chan = col("channel", 2), c_cond = col("condition", 3);
  if (!c_true || !c_meas) throw ConfigError(fmt::format("{}: need columns true_m and measured_m", a.input));

  std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    const double truth = parse_double(row[*c_true], t.line_numbers[i]);
    const double meas = parse_double(row[*c_meas], t.line_numbers[i]);
    std::string chan = c_chan ? std::string(to_string(channel_from_string(row[*c_chan]))) : "all";
    std::string cond = c_cond ? std::string(to_string(link_condition_from_string(row[*c_cond]))) : "all";
    groups[{chan, cond}].push_back(meas - truth);
  }
  if (groups.empty()) throw DataError(fmt::format("{}: no data rows", a.input));

  std::string text = "channel,condition,count,mean_m,std_m,iqr_m,median_m\n";
  for (const auto& [key, errors] : groups) {
    const Aggregate agg = aggregate(errors);
    text += fmt::format("{},{},{},{},{},{},{}\n", key.first, key.second, agg.count, format_double(agg.mean),
                        format_double(agg.stddev), format_double(agg.iqr), format_double(agg.median));
  }
  emit(a.out, text);
  return 0;
}

struct EnergyArgs {
  std::string profile;
  double period = 1.0;
  bool sleep = false;
  std::string out;
};

int run_energy(const EnergyArgs& a) {
  PowerProfile p;
  if (auto builtin = find_builtin_profile(a.profile)) {
    p = *builtin;
  } else if (fs::exists(a.profile)) {
    p = io::profile_from_json(read_json(a.profile));
  } else {
    throw ConfigError(fmt::format("unknown profile '{}' (built-ins: 3db, dw1000, dwm1001, or a JSON file)", a.profile));
  }
  const double energy = energy_per_sstwr(p);
  const double power = average_power(p, a.period, a.sleep);
  std::string text;
  text += fmt::format("profile: {}\n", p.name);
  text += fmt::format("energy_per_sstwr_uJ: {:.4f}\n", energy);
  text += fmt::format("update_period_s: {}\n", format_double(a.period));
  text += fmt::format("rest_state: {}\n", a.sleep ? "sleep" : "idle");
  text += fmt::format("average_power_mW: {:.6f}\n", power);
  emit(a.out, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UWB ranging and localization simulation toolkit"};
  app.require_subcommand(1, 1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit error distributions by maximum likelihood and rank them by SSE");
  fit_cmd->add_option("--input", fit.input, "CSV file with distance errors in meters (one column)")->required();
  fit_cmd->add_option("--column", fit.column, "Column name or 0-based index to read (default: first)");
  fit_cmd->add_flag("--no-header", fit.no_header, "Input has no header row");
  fit_cmd->add_option("--families", fit.families, "Comma-separated families: gaussian,burr12,lognormal");
  fit_cmd->add_option("--bins", fit.bins, "Histogram bins for the SSE score (count)")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--out", fit.out, "Write the JSON report here instead of stdout");

  SampleArgs smp;
  auto* smp_cmd = app.add_subcommand("sample", "Draw errors (meters) from a distribution by inverse transform");
  smp_cmd->add_option("--dist", smp.dist, "Distribution JSON (inline or file), parameters in meters");
  smp_cmd->add_option("--model", smp.model,
                      "Built-in fitted model: los, drywall, concrete_burr12, concrete_lognormal, human_burr12, "
                      "human_lognormal");
  smp_cmd->add_option("-n,--count", smp.count, "Number of samples (count)");
  smp_cmd->add_option("--seed", smp.seed, "RNG seed (64-bit integer)");
  smp_cmd->add_option("--out", smp.out, "Write CSV here instead of stdout");

  SolveArgs slv;
  auto* slv_cmd = app.add_subcommand("solve", "Regularized Gauss-Newton multilateration from anchor distances");
  slv_cmd->add_option("--input", slv.input,
                      "JSON {anchors:[{id,x,y,z}] (m), distances:[...] (m), config:{delta (m), k_max, c (1/m), "
                      "x_r_mode}}; '-' reads stdin");
  slv_cmd->add_option("--out", slv.out, "Write JSON here instead of stdout");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo building-deployment study over a tag grid");
  sim_cmd->add_option("--config", sim.config, "Scenario JSON (lengths in meters)");
  sim_cmd->add_option("--preset", sim.preset, "Built-in scenario: paper-los, paper-drywall, paper-concrete");
  sim_cmd->add_option("--out", sim.out, "Output directory for points.csv, ecdf.csv, report.json");
  sim_cmd->add_option("--seed", sim.seed, "Override the scenario seed (64-bit integer)");
  sim_cmd->add_option("--runs", sim.runs, "Override the number of runs (count)")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (count, 0 = hardware concurrency)");

  RangeStatsArgs rs;
  auto* rs_cmd = app.add_subcommand("range-stats", "Mean/std/IQR of ranging errors (m) per channel and condition");
  rs_cmd->add_option("--input", rs.input, "CSV with true_m, measured_m (m) [, channel (GHz), condition]")->required();
  rs_cmd->add_flag("--no-header", rs.no_header, "Input has no header row (columns in the order above)");
  rs_cmd->add_option("--out", rs.out, "Write CSV here instead of stdout");

  EnergyArgs en;
  auto* en_cmd = app.add_subcommand("energy", "Energy per SS-TWR (uJ) and average power (mW) of a device profile");
  en_cmd->add_option("--profile", en.profile, "Built-in profile (3db, dw1000, dwm1001) or JSON file (mW, us, uJ)")
      ->required();
  en_cmd->add_option("--period", en.period, "Location update period (s)")->check(CLI::PositiveNumber);
  en_cmd->add_flag("--sleep", en.sleep, "Rest in deep sleep between rangings instead of idle");
  en_cmd->add_option("--out", en.out, "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*smp_cmd) return run_sample(smp);
    if (*slv_cmd) return run_solve(slv);
    if (*sim_cmd) return run_simulate(sim);
    if (*rs_cmd) return run_range_stats(rs);
    if (*en_cmd) return run_energy(en);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
