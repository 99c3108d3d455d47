#pragma once

#include <span>
#include <string_view>

#include "uwbsim/distributions.hpp"
#include "uwbsim/ranging.hpp"

namespace uwbsim::reference {

/// Fitted error models from the ranging campaign (3db Access, all channels
/// aggregated, after calibration).
struct FittedModel {
  std::string_view name;
  LinkCondition condition;
  ErrorDistribution model;
};

/// The six fitted parameter sets: LOS and drywall (Gaussian), concrete and
/// human body (Burr XII and log-normal each).
std::span<const FittedModel> fitted_models();

/// Looks up a fitted model by name, e.g. "concrete_burr12". Throws DomainError.
const ErrorDistribution& fitted_model(std::string_view name);

/// Default simulation table: Gaussians for LOS/drywall, Burr XII for the hard
/// NLOS conditions.
ModelTable default_model_table();

/// Measured ranging error statistics (m), documentation fixtures only.
struct RangingStatistics {
  std::string_view scenario;
  std::string_view device;
  double mean;
  double stddev;
  double iqr;
};

std::span<const RangingStatistics> measured_ranging_statistics();

}  // namespace uwbsim::reference
