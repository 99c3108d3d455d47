#include "uwbsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim {

namespace {

constexpr double kCoincidence = 1e-9;
constexpr double kDegenerateNudge = 1e-6;

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Eigen::Vector3d to_vec(const Point3& p) { return {p.x, p.y, p.z}; }
Point3 to_point(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

bool near_anchor(const Point3& x, std::span<const Anchor> anchors) {
  return std::any_of(anchors.begin(), anchors.end(),
                     [&](const Anchor& a) { return true_distance(a.position, x) < kCoincidence; });
}

}  // namespace

void SolverConfig::validate() const {
  if (!(delta > 0.0)) throw InvalidParameter(fmt::format("solver delta must be > 0 (got {})", delta));
  if (k_max < 1) throw InvalidParameter(fmt::format("solver k_max must be >= 1 (got {})", k_max));
  if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidParameter(fmt::format("solver c must be >= 0 (got {})", c));
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidParameter(fmt::format("solver weights must be > 0 (got {})", w));
  }
}

Point3 anchor_median(std::span<const Anchor> anchors) {
  if (anchors.empty()) throw std::invalid_argument("anchor_median: no anchors");
  std::vector<double> xs, ys, zs;
  for (const Anchor& a : anchors) {
    xs.push_back(a.position.x);
    ys.push_back(a.position.y);
    zs.push_back(a.position.z);
  }
  return {median_of(std::move(xs)), median_of(std::move(ys)), median_of(std::move(zs))};
}

Point3 anchor_mean(std::span<const Anchor> anchors) {
  if (anchors.empty()) throw std::invalid_argument("anchor_mean: no anchors");
  Point3 m;
  for (const Anchor& a : anchors) m = m + a.position;
  const double n = static_cast<double>(anchors.size());
  return {m.x / n, m.y / n, m.z / n};
}

Point3 regularization_point(const SolverConfig& config, std::span<const Anchor> anchors) {
  if (config.x_r) return *config.x_r;
  return config.x_r_mode == RegularizationMode::mean ? anchor_mean(anchors) : anchor_median(anchors);
}

JacobianMatrix jacobian(const Point3& x, std::span<const Anchor> anchors) {
  JacobianMatrix j(static_cast<Eigen::Index>(anchors.size()), 3);
  const Eigen::Vector3d xv = to_vec(x);
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const Eigen::Vector3d diff = to_vec(anchors[i].position) - xv;
    const double norm = diff.norm();
    if (norm < kCoincidence) {
      throw NumericalError(fmt::format("jacobian undefined: iterate coincides with anchor '{}'", anchors[i].id));
    }
    j.row(static_cast<Eigen::Index>(i)) = diff.transpose() / norm;
  }
  return j;
}

double objective(const SolverConfig& config, std::span<const Anchor> anchors, std::span<const double> distances,
                 const Point3& x) {
  const Point3 x_r = regularization_point(config, anchors);
  double acc = 0.0;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    const double w = config.weights.empty() ? 1.0 : 1.0 / config.weights[i];
    const double r = w * (true_distance(anchors[i].position, x) - distances[i]);
    acc += r * r;
  }
  const double reg = true_distance(x, x_r);
  return acc + config.c * config.c * reg * reg;
}

LocationEstimate solve(const SolverConfig& config, std::span<const Anchor> anchors, std::span<const double> distances) {
  config.validate();
  if (anchors.size() < 3) throw std::invalid_argument(fmt::format("solve needs >= 3 anchors (got {})", anchors.size()));
  if (distances.size() != anchors.size()) {
    throw std::invalid_argument(
        fmt::format("distance count {} does not match anchor count {}", distances.size(), anchors.size()));
  }
  if (!config.weights.empty() && config.weights.size() != anchors.size()) {
    throw std::invalid_argument(
        fmt::format("weight count {} does not match anchor count {}", config.weights.size(), anchors.size()));
  }

  const auto n = static_cast<Eigen::Index>(anchors.size());
  const bool regularized = config.c > 0.0;
  const Eigen::Vector3d x_r = to_vec(regularization_point(config, anchors));
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n && !config.weights.empty(); ++i) w(i) = 1.0 / config.weights[static_cast<std::size_t>(i)];

  Eigen::MatrixXd a(regularized ? n + 3 : n, 3);
  Eigen::VectorXd b(a.rows());
  if (regularized) a.bottomRows(3) = config.c * Eigen::Matrix3d::Identity();

  LocationEstimate est;
  Eigen::Vector3d x = config.x0 ? to_vec(*config.x0) : x_r;

  for (int k = 0; k < config.k_max; ++k) {
    if (near_anchor(to_point(x), anchors)) x.z() += kDegenerateNudge;
    const JacobianMatrix j = jacobian(to_point(x), anchors);
    if (!((j.rowwise().norm().array() - 1.0).abs() < 1e-9).all()) {
      throw NumericalError("jacobian rows lost unit norm");
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      const double h = (to_vec(anchors[static_cast<std::size_t>(i)].position) - x).norm();
      a.row(i) = -w(i) * j.row(i);
      b(i) = -w(i) * (h - distances[static_cast<std::size_t>(i)]);
    }
    if (regularized) b.tail(3) = -config.c * (x - x_r);

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 3) throw NumericalError("singular geometry: rank-deficient Gauss-Newton system");
    const Eigen::Vector3d dx = qr.solve(b);

    x += dx;
    est.iterations = k + 1;
    est.final_step_norm = dx.norm();
    if (est.final_step_norm < config.delta) {
      est.converged = true;
      break;
    }
  }
  est.position = to_point(x);
  return est;
}

double localization_error(const Point3& estimate, const Point3& truth, ErrorMode mode) {
  const double dx = estimate.x - truth.x, dy = estimate.y - truth.y;
  if (mode == ErrorMode::planar) return std::hypot(dx, dy);
  return std::hypot(dx, dy, estimate.z - truth.z);
}

}  // namespace uwbsim
