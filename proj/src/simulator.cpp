#include "uwbsim/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim {

namespace {

std::size_t lattice_count(double extent, double step) {
  return static_cast<std::size_t>(std::floor(extent / step + 1e-9)) + 1;
}

// One error draw from either the random stream or the fixed uniform.
double draw_error(const Scenario& s, const ErrorDistribution& model, std::uint64_t seed) {
  if (s.fixed_uniform) {
    FixedUniform fixed{*s.fixed_uniform};
    return sample(model, fixed);
  }
  RandomStream stream(seed);
  return sample(model, stream);
}

PointRecord simulate_point(const Scenario& s, const Point3& truth, int run, std::size_t point) {
  PointRecord rec;
  rec.run = run;
  rec.point = point;
  rec.truth = truth;
  rec.conditions.reserve(s.anchors.size());

  const std::size_t channels = s.diversity ? s.diversity->channels : 1;
  std::vector<double> distances(s.anchors.size());
  std::vector<double> per_channel(channels);

  for (std::size_t a = 0; a < s.anchors.size(); ++a) {
    const LinkCondition cond = classify_link(truth, s.anchors[a], s.walls);
    rec.conditions.push_back(cond);
    const ErrorDistribution& model = model_for(s.models, cond);
    const double d = true_distance(truth, s.anchors[a].position);
    for (std::size_t ch = 0; ch < channels; ++ch) {
      per_channel[ch] = d + draw_error(s, model, draw_seed(s.seed, run, point, a, ch));
    }
    distances[a] = s.diversity ? diversity_select(per_channel, s.diversity->strategy) : per_channel[0];
  }

  try {
    const LocationEstimate est = solve(s.solver, s.anchors, distances);
    rec.estimate = est.position;
    rec.iterations = est.iterations;
    rec.converged = est.converged;
    rec.err2d = localization_error(est.position, truth, ErrorMode::planar);
    rec.err3d = localization_error(est.position, truth, ErrorMode::spatial);
  } catch (const NumericalError& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  return rec;
}

}  // namespace

void Scenario::validate() const {
  if (!(grid_step > 0.0)) throw InvalidParameter(fmt::format("grid_step must be > 0 (got {})", grid_step));
  if (runs < 1) throw InvalidParameter(fmt::format("runs must be >= 1 (got {})", runs));
  if (!(area.width >= 0.0) || !(area.height >= 0.0)) throw InvalidParameter("area dimensions must be >= 0");
  if (anchors.size() < 3) throw InvalidParameter(fmt::format("need at least 3 anchors (got {})", anchors.size()));
  uwbsim::validate(anchors);
  for (const Wall& w : walls) uwbsim::validate(w);
  solver.validate();
  if (!models.contains(LinkCondition::los)) throw DataError("model table lacks a LOS model");
  for (const Wall& w : walls) {
    if (!models.contains(condition_for(w.material))) {
      throw DataError(fmt::format("model table lacks a model for {} walls", to_string(w.material)));
    }
  }
  if (diversity && diversity->channels < 1) throw InvalidParameter("diversity needs at least one channel");
  if (fixed_uniform && !(*fixed_uniform > 0.0 && *fixed_uniform < 1.0)) {
    throw InvalidParameter("fixed_uniform must lie in (0, 1)");
  }
}

std::vector<Point3> build_grid(const Area& area, double grid_step, double tag_height) {
  if (!(grid_step > 0.0)) throw InvalidParameter(fmt::format("grid step must be > 0 (got {})", grid_step));
  if (grid_step > area.width && grid_step > area.height) {
    throw DataError(fmt::format("empty grid: step {} exceeds both area dimensions", grid_step));
  }
  const std::size_t nx = lattice_count(area.width, grid_step);
  const std::size_t ny = lattice_count(area.height, grid_step);
  std::vector<Point3> grid;
  grid.reserve(nx * ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      grid.push_back({area.x0 + static_cast<double>(i) * grid_step, area.y0 + static_cast<double>(j) * grid_step,
                      tag_height});
    }
  }
  return grid;
}

double interpolated_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DataError("quantile of empty data");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw DataError("cannot aggregate an empty error list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  Aggregate agg;
  const double n = static_cast<double>(sorted.size());
  agg.count = sorted.size();
  agg.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : sorted) ss += (v - agg.mean) * (v - agg.mean);
  agg.stddev = std::sqrt(ss / n);
  agg.q1 = interpolated_quantile(sorted, 0.25);
  agg.median = interpolated_quantile(sorted, 0.5);
  agg.q3 = interpolated_quantile(sorted, 0.75);
  agg.iqr = agg.q3 - agg.q1;
  agg.min = sorted.front();
  agg.max = sorted.back();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    agg.ecdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return agg;
}

std::uint64_t draw_seed(std::uint64_t master, int run, std::size_t point, std::size_t anchor, std::size_t channel) {
  return derive_seed(master, {static_cast<std::uint64_t>(run), point, anchor, channel});
}

RunStatistics run_scenario(const Scenario& scenario, unsigned threads) {
  scenario.validate();
  const std::vector<Point3> grid = build_grid(scenario.area, scenario.grid_step, scenario.tag_height);

  RunStatistics stats;
  stats.grid_points = grid.size();
  stats.runs = scenario.runs;
  const std::size_t total = grid.size() * static_cast<std::size_t>(scenario.runs);
  stats.points.resize(total);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  // Work items are claimed dynamically but each writes only its own slot,
  // and each draws from its own seed, so scheduling cannot change results.
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t item = next++; item < total; item = next++) {
        const int run = static_cast<int>(item / grid.size());
        const std::size_t point = item % grid.size();
        stats.points[item] = simulate_point(scenario, grid[point], run, point);
      }
    } catch (...) {
      const std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = total;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<double> planar, spatial;
  planar.reserve(total);
  spatial.reserve(total);
  for (const PointRecord& r : stats.points) {
    if (r.failed) {
      ++stats.failed;
      continue;
    }
    planar.push_back(r.err2d);
    spatial.push_back(r.err3d);
  }
  if (planar.empty()) throw NumericalError("every simulated point failed to solve");
  stats.planar = aggregate(planar);
  stats.spatial = aggregate(spatial);
  return stats;
}

}  // namespace uwbsim
