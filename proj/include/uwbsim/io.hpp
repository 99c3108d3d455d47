#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uwbsim/energy.hpp"
#include "uwbsim/fitting.hpp"
#include "uwbsim/simulator.hpp"
#include "uwbsim/solver.hpp"

namespace uwbsim::io {

using Json = nlohmann::json;

// All parsers throw ConfigError naming the offending key.

/// {"family": "gaussian"|"burr12"|"lognormal", "params": {...}}; units meters.
Json to_json(const ErrorDistribution& dist);
ErrorDistribution distribution_from_json(const Json& j);

Json to_json(const SolverConfig& config);
SolverConfig solver_config_from_json(const Json& j);

std::vector<Anchor> anchors_from_json(const Json& j);
Json to_json(std::span<const Anchor> anchors);

/// Scenario config with keys area{w,h}, anchors, walls, grid_step,
/// tag_height, runs, seed, models{los,drywall,concrete,human},
/// solver{delta,k_max,c,x_r_mode}, diversity{channels,strategy}.
Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

/// Built-in building-study presets: "paper-los", "paper-drywall", "paper-concrete".
std::optional<Scenario> preset_scenario(std::string_view name);
std::vector<std::string> preset_names();

PowerProfile profile_from_json(const Json& j);
Json to_json(const PowerProfile& p);

/// Input of the `solve` command: {anchors, distances, config}.
struct SolveRequest {
  std::vector<Anchor> anchors;
  std::vector<double> distances;
  SolverConfig config;
};
SolveRequest solve_request_from_json(const Json& j);
Json to_json(const LocationEstimate& est);

Json to_json(const Aggregate& agg, bool with_ecdf = false);
Json to_json(const FitResult& fit);
Json fit_report(std::span<const RankedFit> ranking, std::size_t samples, std::size_t bins);

/// Per-point results: run,px,py,pz,ex,ey,ez,err2d_m,err3d_m,conditions.
void write_points_csv(std::ostream& out, const RunStatistics& stats);
/// ECDF of 2D errors: err2d_m,probability.
void write_ecdf_csv(std::ostream& out, const RunStatistics& stats);
/// Aggregate report for 2D and 3D errors plus failure counts.
Json run_report(const Scenario& scenario, const RunStatistics& stats);

}  // namespace uwbsim::io
