#pragma once

#include <map>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "uwbsim/distributions.hpp"
#include "uwbsim/random.hpp"

namespace uwbsim {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

enum class LinkCondition { los, nlos_drywall, nlos_concrete, nlos_human };
enum class Channel { ch6_5, ch7_0, ch7_5 };

std::string_view to_string(LinkCondition c);
LinkCondition link_condition_from_string(std::string_view name);
std::string_view to_string(Channel c);
Channel channel_from_string(std::string_view name);
/// Channel for diversity slot i (0 -> 6.5 GHz, 1 -> 7 GHz, 2 -> 7.5 GHz).
Channel channel_at(std::size_t index);

/// SS-TWR timestamps and clock drifts. All times in seconds; drifts are
/// dimensionless (20e-6 == 20 ppm).
class TwrTiming {
 public:
  TwrTiming(double t_round, double t_proc, double e1 = 0.0, double e2 = 0.0);

  double t_round() const { return t_round_; }
  double t_proc() const { return t_proc_; }
  double e1() const { return e1_; }
  double e2() const { return e2_; }

 private:
  double t_round_;
  double t_proc_;
  double e1_;
  double e2_;
};

/// Propagation time (t_round - t_proc) / 2.
double propagation_time(const TwrTiming& t);

/// Error in the estimated propagation time caused by clock drift:
/// e1 * t_p + t_proc * (e1 - e2) / 2.
double drift_error(const TwrTiming& t, double t_p);

/// Distance from time of flight.
inline double tof_to_distance(double seconds) { return seconds * kSpeedOfLight; }

struct RangingRecord {
  double true_distance;
  double measured_distance;
  Channel channel;
  LinkCondition condition;

  double error() const { return measured_distance - true_distance; }
};

using ModelTable = std::map<LinkCondition, ErrorDistribution>;

/// Looks up the model for a condition; throws DataError when it is missing.
const ErrorDistribution& model_for(const ModelTable& table, LinkCondition condition);

/// measured = truth + one draw from the condition's error model.
template <UniformSource S>
RangingRecord simulate_range(double true_distance, LinkCondition condition, const ModelTable& table, S& stream,
                             Channel channel = Channel::ch6_5);

struct CalibrationCoefficients {
  double p0 = 1.0;  // slope
  double p1 = 0.0;  // intercept (m)
};

/// Ordinary least squares line measured = p0 * true + p1.
/// Throws DataError when all true distances coincide or p0 <= 0.
CalibrationCoefficients calibrate_fit(std::span<const std::pair<double, double>> pairs);

/// Corrected distance (x_m - p1) / p0.
double calibrate_apply(const CalibrationCoefficients& coef, double measured);

enum class DiversityStrategy { min, mean, median };

std::string_view to_string(DiversityStrategy s);
DiversityStrategy diversity_strategy_from_string(std::string_view name);

/// Combines per-channel measurements. Median takes the lower middle value
/// for even counts so the result is always one of the inputs.
double diversity_select(std::span<const double> values, DiversityStrategy strategy);

// ---------------------------------------------------------------------------

void check_true_distance(double true_distance);

template <UniformSource S>
RangingRecord simulate_range(double true_distance, LinkCondition condition, const ModelTable& table, S& stream,
                             Channel channel) {
  check_true_distance(true_distance);
  const ErrorDistribution& model = model_for(table, condition);
  return {true_distance, true_distance + sample(model, stream), channel, condition};
}

}  // namespace uwbsim
