#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uwbsim/geometry.hpp"
#include "uwbsim/ranging.hpp"
#include "uwbsim/solver.hpp"

namespace uwbsim {

/// Axis-aligned tracking area in plan view (m).
struct Area {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 0.0;   // along x
  double height = 0.0;  // along y
};

struct DiversityConfig {
  std::size_t channels = 3;
  DiversityStrategy strategy = DiversityStrategy::min;
};

struct Scenario {
  std::string name;
  Area area;
  std::vector<Anchor> anchors;
  std::vector<Wall> walls;
  double grid_step = 0.25;  // m
  double tag_height = 1.2;  // m; not stated for the building study, handheld height assumed
  int runs = 5;
  std::uint64_t seed = 1;
  ModelTable models;
  SolverConfig solver;
  std::optional<DiversityConfig> diversity;
  /// When set, every error draw uses this uniform instead of a random one
  /// (0.5 gives median draws). Meant for noiseless checks.
  std::optional<double> fixed_uniform;

  /// Throws InvalidParameter/DataError when an invariant is violated.
  void validate() const;
};

/// Tag positions on a regular lattice starting at the area origin. An edge
/// is included when it falls on a multiple of the step (within 1e-9 m).
/// Throws DataError when the step exceeds both area dimensions.
std::vector<Point3> build_grid(const Area& area, double grid_step, double tag_height);

struct PointRecord {
  int run = 0;
  std::size_t point = 0;
  Point3 truth;
  Point3 estimate;
  double err2d = 0.0;
  double err3d = 0.0;
  std::vector<LinkCondition> conditions;  // one per anchor
  int iterations = 0;
  bool converged = false;
  bool failed = false;
  std::string failure;
};

struct Aggregate {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double iqr = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// (value, P[X <= value]) at every distinct value, ascending.
  std::vector<std::pair<double, double>> ecdf;
};

/// Mean, population standard deviation, linearly interpolated quartiles and
/// the ECDF. Throws DataError on empty input.
Aggregate aggregate(std::span<const double> values);

/// Linear-interpolation quantile of sorted data at position (n - 1) * p.
double interpolated_quantile(std::span<const double> sorted, double p);

struct RunStatistics {
  std::vector<PointRecord> points;  // run-major, then grid order
  std::size_t grid_points = 0;
  int runs = 0;
  std::size_t failed = 0;
  Aggregate planar;   // 2D errors of successful points
  Aggregate spatial;  // 3D errors of successful points
};

/// Monte Carlo deployment study. Results depend only on the scenario
/// (including its seed), never on the thread count; threads = 0 picks the
/// hardware concurrency.
RunStatistics run_scenario(const Scenario& scenario, unsigned threads = 1);

/// Seed of the stream used for one error draw.
std::uint64_t draw_seed(std::uint64_t master, int run, std::size_t point, std::size_t anchor, std::size_t channel);

}  // namespace uwbsim
