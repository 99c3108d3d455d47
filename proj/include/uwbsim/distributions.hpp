#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "uwbsim/random.hpp"

namespace uwbsim {

/// Distribution families, ordered by parameter count (used as a tie-break
/// when ranking fits).
enum class Family { gaussian, lognormal, burr12 };

std::string_view to_string(Family f);
/// Accepts "gaussian", "lognormal", "burr12". Throws DomainError otherwise.
Family family_from_string(std::string_view name);
std::size_t parameter_count(Family f);

// Parameter sets. All lengths in meters.
struct Gaussian {
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const Gaussian&) const = default;
};

/// Burr type XII (Singh–Maddala) with location mu and scale sigma.
/// Support is x > mu.
struct BurrXII {
  double c = 1.0;
  double d = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const BurrXII&) const = default;
};

/// Three-parameter log-normal: ln((x - mu) / sigma) ~ N(0, s^2). Support is x > mu.
struct LogNormal {
  double s = 1.0;
  double mu = 0.0;
  double sigma = 1.0;
  bool operator==(const LogNormal&) const = default;
};

/// Immutable, validated error distribution. Construction is the only
/// place parameters are checked; pdf/cdf/quantile are total afterwards.
class ErrorDistribution {
 public:
  using Params = std::variant<Gaussian, BurrXII, LogNormal>;

  ErrorDistribution(Gaussian p);  // NOLINT(google-explicit-constructor)
  ErrorDistribution(BurrXII p);   // NOLINT(google-explicit-constructor)
  ErrorDistribution(LogNormal p);  // NOLINT(google-explicit-constructor)

  Family family() const;
  const Params& params() const { return params_; }

  /// Location parameter (the mean for Gaussian, the support bound otherwise).
  double location() const;

  bool operator==(const ErrorDistribution&) const = default;

 private:
  Params params_;
};

double pdf(const ErrorDistribution& dist, double x);
/// Natural log of the density; -inf outside the support.
double log_pdf(const ErrorDistribution& dist, double x);
double cdf(const ErrorDistribution& dist, double x);
/// Inverse CDF. Throws DomainError unless 0 < u < 1.
double quantile(const ErrorDistribution& dist, double u);

/// Inverse-transform draw: exactly one uniform is consumed per sample.
template <UniformSource S>
double sample(const ErrorDistribution& dist, S& stream) {
  return quantile(dist, stream.uniform());
}

/// Standard normal CDF and its inverse.
double normal_cdf(double z);
double normal_quantile(double u);

}  // namespace uwbsim
