#include "uwbsim/reference.hpp"

#include <array>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim::reference {

namespace {

const std::array<FittedModel, 6> kFitted{{
    {"los", LinkCondition::los, Gaussian{0.004, 0.071}},
    {"drywall", LinkCondition::nlos_drywall, Gaussian{-0.043, 0.092}},
    {"concrete_burr12", LinkCondition::nlos_concrete, BurrXII{9.64, 0.98, -0.46, 0.72}},
    {"concrete_lognormal", LinkCondition::nlos_concrete, LogNormal{0.17, -0.53, 0.81}},
    {"human_burr12", LinkCondition::nlos_human, BurrXII{32.84, 0.24, -1.63, 1.66}},
    {"human_lognormal", LinkCondition::nlos_human, LogNormal{0.44, -0.30, 0.50}},
}};

const std::array<RangingStatistics, 8> kMeasured{{
    {"los", "3db", 0.02, 0.07, 0.09},
    {"los", "decawave", 0.00, 0.05, 0.07},
    {"drywall", "3db", -0.04, 0.08, 0.12},
    {"drywall", "decawave", -0.01, 0.09, 0.10},
    {"concrete", "3db", 0.46, 0.14, 0.19},
    {"concrete", "decawave", 0.44, 0.07, 0.14},
    {"human", "3db", 0.55, 0.32, 0.29},
    {"human", "decawave", 0.60, 0.26, 0.46},
}};

}  // namespace

std::span<const FittedModel> fitted_models() { return kFitted; }

const ErrorDistribution& fitted_model(std::string_view name) {
  for (const FittedModel& m : kFitted) {
    if (m.name == name) return m.model;
  }
  throw DomainError(fmt::format("no fitted model named '{}'", name));
}

ModelTable default_model_table() {
  return {
      {LinkCondition::los, fitted_model("los")},
      {LinkCondition::nlos_drywall, fitted_model("drywall")},
      {LinkCondition::nlos_concrete, fitted_model("concrete_burr12")},
      {LinkCondition::nlos_human, fitted_model("human_burr12")},
  };
}

std::span<const RangingStatistics> measured_ranging_statistics() { return kMeasured; }

}  // namespace uwbsim::reference
