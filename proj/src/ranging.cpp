#include "uwbsim/ranging.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim {

std::string_view to_string(LinkCondition c) {
  switch (c) {
    case LinkCondition::los: return "los";
    case LinkCondition::nlos_drywall: return "drywall";
    case LinkCondition::nlos_concrete: return "concrete";
    case LinkCondition::nlos_human: return "human";
  }
  return "unknown";
}

LinkCondition link_condition_from_string(std::string_view name) {
  if (name == "los" || name == "LOS") return LinkCondition::los;
  if (name == "drywall" || name == "NLOS_drywall") return LinkCondition::nlos_drywall;
  if (name == "concrete" || name == "NLOS_concrete") return LinkCondition::nlos_concrete;
  if (name == "human" || name == "NLOS_human") return LinkCondition::nlos_human;
  throw DomainError(fmt::format("unknown link condition '{}'", name));
}

std::string_view to_string(Channel c) {
  switch (c) {
    case Channel::ch6_5: return "6.5";
    case Channel::ch7_0: return "7.0";
    case Channel::ch7_5: return "7.5";
  }
  return "unknown";
}

Channel channel_from_string(std::string_view name) {
  if (name == "6.5") return Channel::ch6_5;
  if (name == "7" || name == "7.0") return Channel::ch7_0;
  if (name == "7.5") return Channel::ch7_5;
  throw DomainError(fmt::format("unknown channel '{}' (expected 6.5, 7.0 or 7.5)", name));
}

Channel channel_at(std::size_t index) {
  static constexpr Channel kChannels[] = {Channel::ch6_5, Channel::ch7_0, Channel::ch7_5};
  return kChannels[index % 3];
}

TwrTiming::TwrTiming(double t_round, double t_proc, double e1, double e2)
    : t_round_(t_round), t_proc_(t_proc), e1_(e1), e2_(e2) {
  if (!(t_proc >= 0.0) || !(t_round >= t_proc) || !std::isfinite(t_round)) {
    throw InvalidParameter(fmt::format("TWR timing requires t_round >= t_proc >= 0 (got {} / {})", t_round, t_proc));
  }
  if (!(std::abs(e1) <= 1e-3) || !(std::abs(e2) <= 1e-3)) {
    throw InvalidParameter(fmt::format("clock drift must satisfy |e| <= 1e-3 (got {} / {})", e1, e2));
  }
}

double propagation_time(const TwrTiming& t) { return (t.t_round() - t.t_proc()) / 2.0; }

double drift_error(const TwrTiming& t, double t_p) {
  if (!(t_p >= 0.0)) throw DomainError(fmt::format("propagation time must be >= 0 (got {})", t_p));
  return t.e1() * t_p + 0.5 * t.t_proc() * (t.e1() - t.e2());
}

void check_true_distance(double true_distance) {
  if (!(true_distance > 0.0) || !std::isfinite(true_distance)) {
    throw DomainError(fmt::format("true distance must be finite and > 0 (got {})", true_distance));
  }
}

const ErrorDistribution& model_for(const ModelTable& table, LinkCondition condition) {
  const auto it = table.find(condition);
  if (it == table.end()) throw DataError(fmt::format("no error model for condition '{}'", to_string(condition)));
  return it->second;
}

CalibrationCoefficients calibrate_fit(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 2) throw DataError("calibration needs at least two pairs");
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (!(sxx > 0.0)) throw DataError("calibration is rank deficient: all true distances are equal");
  CalibrationCoefficients coef{sxy / sxx, 0.0};
  coef.p1 = my - coef.p0 * mx;
  if (!(coef.p0 > 0.0)) throw DataError(fmt::format("calibration slope must be positive (got {})", coef.p0));
  return coef;
}

double calibrate_apply(const CalibrationCoefficients& coef, double measured) {
  if (!(coef.p0 > 0.0)) throw InvalidParameter("calibration slope p0 must be > 0");
  return (measured - coef.p1) / coef.p0;
}

std::string_view to_string(DiversityStrategy s) {
  switch (s) {
    case DiversityStrategy::min: return "min";
    case DiversityStrategy::mean: return "mean";
    case DiversityStrategy::median: return "median";
  }
  return "unknown";
}

DiversityStrategy diversity_strategy_from_string(std::string_view name) {
  if (name == "min") return DiversityStrategy::min;
  if (name == "mean") return DiversityStrategy::mean;
  if (name == "median") return DiversityStrategy::median;
  throw DomainError(fmt::format("unknown diversity strategy '{}'", name));
}

double diversity_select(std::span<const double> values, DiversityStrategy strategy) {
  if (values.empty()) throw DataError("diversity selection needs at least one value");
  switch (strategy) {
    case DiversityStrategy::min: return *std::min_element(values.begin(), values.end());
    case DiversityStrategy::mean:
      return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    case DiversityStrategy::median: {
      std::vector<double> v(values.begin(), values.end());
      const auto mid = v.begin() + static_cast<std::ptrdiff_t>((v.size() - 1) / 2);
      std::nth_element(v.begin(), mid, v.end());
      return *mid;
    }
  }
  return 0.0;
}

}  // namespace uwbsim
