#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uwbsim/geometry.hpp"

namespace uwbsim {

using JacobianMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// How the regularization point is derived from the anchors when not given.
enum class RegularizationMode { median, mean };

/// Regularized Gauss-Newton settings. Defaults are the field configuration:
/// 1 mm tolerance, 10 iterations, c = 0.1 /m (a 10 m prior around x_r).
struct SolverConfig {
  double delta = 1e-3;  // stop when the step norm drops below this (m)
  int k_max = 10;
  double c = 0.1;  // regularization coefficient (1/m); 0 disables it
  RegularizationMode x_r_mode = RegularizationMode::median;
  std::optional<Point3> x_r;     // overrides x_r_mode
  std::vector<double> weights;   // per-anchor standard deviations (m); empty = identity
  std::optional<Point3> x0;      // initial iterate; defaults to x_r

  /// Throws InvalidParameter if an invariant is violated.
  void validate() const;
};

struct LocationEstimate {
  Point3 position;
  int iterations = 0;
  bool converged = false;
  double final_step_norm = 0.0;
};

/// Component-wise median (mean of the two middle values for even counts).
Point3 anchor_median(std::span<const Anchor> anchors);
Point3 anchor_mean(std::span<const Anchor> anchors);
Point3 regularization_point(const SolverConfig& config, std::span<const Anchor> anchors);

/// Rows are unit vectors from x towards each anchor, (x_A - x) / |x_A - x|.
/// Note the sign: this is the negative of the gradient of |x_A - x| w.r.t. x.
/// Throws NumericalError when x is within 1e-9 m of an anchor.
JacobianMatrix jacobian(const Point3& x, std::span<const Anchor> anchors);

/// Each step solves, in the least-squares sense via QR,
///   [ W * G ]        [ W * (h(x_k) - d) ]
///   [ c * I ] dx = - [ c * (x_k - x_r)  ]
/// where G = dh/dx = -jacobian(x_k) and W = diag(1 / weights).
/// Throws std::invalid_argument on mismatched sizes or fewer than three
/// anchors, NumericalError on rank-deficient geometry.
LocationEstimate solve(const SolverConfig& config, std::span<const Anchor> anchors, std::span<const double> distances);

/// Regularized least-squares objective minimized by solve():
/// |W (h(x) - d)|^2 + c^2 |x - x_r|^2.
double objective(const SolverConfig& config, std::span<const Anchor> anchors, std::span<const double> distances,
                 const Point3& x);

enum class ErrorMode { planar, spatial };

/// 2D (x, y only) or 3D Euclidean localization error.
double localization_error(const Point3& estimate, const Point3& truth, ErrorMode mode);

}  // namespace uwbsim
