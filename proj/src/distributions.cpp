#include "uwbsim/distributions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "uwbsim/error.hpp"

namespace uwbsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(fmt::format("{} must be finite and > 0 (got {})", name, v));
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw InvalidParameter(fmt::format("{} must be finite (got {})", name, v));
}

// log(1 + exp(t)) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// Acklam's rational approximation for the lower half, u in (0, 0.5].
double acklam_lower(double u) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                           1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                           6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                           -2.549671010422165e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                           3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (u < p_low) {
    const double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = u - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

void check_probability(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError(fmt::format("quantile requires 0 < u < 1 (got {})", u));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::lognormal: return "lognormal";
    case Family::burr12: return "burr12";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "gaussian") return Family::gaussian;
  if (name == "lognormal") return Family::lognormal;
  if (name == "burr12") return Family::burr12;
  throw DomainError(fmt::format("unknown distribution family '{}'", name));
}

std::size_t parameter_count(Family f) {
  switch (f) {
    case Family::gaussian: return 2;
    case Family::lognormal: return 3;
    case Family::burr12: return 4;
  }
  return 0;
}

ErrorDistribution::ErrorDistribution(Gaussian p) : params_(p) {
  require_finite(p.mu, "mu");
  require_positive(p.sigma, "sigma");
}

ErrorDistribution::ErrorDistribution(BurrXII p) : params_(p) {
  require_positive(p.c, "c");
  require_positive(p.d, "d");
  require_finite(p.mu, "mu");
  require_positive(p.sigma, "sigma");
}

ErrorDistribution::ErrorDistribution(LogNormal p) : params_(p) {
  require_positive(p.s, "s");
  require_finite(p.mu, "mu");
  require_positive(p.sigma, "sigma");
}

Family ErrorDistribution::family() const {
  return std::visit(Overloaded{[](const Gaussian&) { return Family::gaussian; },
                               [](const BurrXII&) { return Family::burr12; },
                               [](const LogNormal&) { return Family::lognormal; }},
                    params_);
}

double ErrorDistribution::location() const {
  return std::visit([](const auto& p) { return p.mu; }, params_);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_quantile(double u) {
  check_probability(u);
  // Refine on the lower tail so that Phi(x) - u does not cancel near u = 1.
  const bool upper = u > 0.5;
  const double p = upper ? 1.0 - u : u;
  double x = acklam_lower(p);
  x -= (normal_cdf(x) - p) / normal_pdf(x);
  return upper ? -x : x;
}

double log_pdf(const ErrorDistribution& dist, double x) {
  return std::visit(
      Overloaded{
          [x](const Gaussian& g) {
            const double z = (x - g.mu) / g.sigma;
            return -0.5 * z * z - std::log(g.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
          },
          [x](const BurrXII& b) {
            if (x <= b.mu) return -kInf;
            const double log_z = std::log((x - b.mu) / b.sigma);
            return std::log(b.c * b.d / b.sigma) + (b.c - 1.0) * log_z - (b.d + 1.0) * softplus(b.c * log_z);
          },
          [x](const LogNormal& l) {
            if (x <= l.mu) return -kInf;
            const double log_z = std::log((x - l.mu) / l.sigma);
            return -std::log(l.s * (x - l.mu)) - 0.5 * std::log(2.0 * std::numbers::pi) -
                   log_z * log_z / (2.0 * l.s * l.s);
          }},
      dist.params());
}

double pdf(const ErrorDistribution& dist, double x) {
  const double lp = log_pdf(dist, x);
  return lp == -kInf ? 0.0 : std::exp(lp);
}

double cdf(const ErrorDistribution& dist, double x) {
  return std::visit(Overloaded{[x](const Gaussian& g) { return normal_cdf((x - g.mu) / g.sigma); },
                               [x](const BurrXII& b) {
                                 if (x <= b.mu) return 0.0;
                                 const double log_z = std::log((x - b.mu) / b.sigma);
                                 // 1 - (1 + z^c)^-d
                                 return -std::expm1(-b.d * softplus(b.c * log_z));
                               },
                               [x](const LogNormal& l) {
                                 if (x <= l.mu) return 0.0;
                                 return normal_cdf(std::log((x - l.mu) / l.sigma) / l.s);
                               }},
                    dist.params());
}

double quantile(const ErrorDistribution& dist, double u) {
  check_probability(u);
  return std::visit(Overloaded{[u](const Gaussian& g) { return g.mu + g.sigma * normal_quantile(u); },
                               [u](const BurrXII& b) {
                                 // z = ((1 - u)^(-1/d) - 1)^(1/c)
                                 const double base = std::expm1(-std::log1p(-u) / b.d);
                                 return b.mu + b.sigma * std::pow(base, 1.0 / b.c);
                               },
                               [u](const LogNormal& l) { return l.mu + l.sigma * std::exp(l.s * normal_quantile(u)); }},
                    dist.params());
}

}  // namespace uwbsim
