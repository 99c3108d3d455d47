#include "uwbsim/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

namespace uwbsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMinSamples = 50;

struct Summary {
  double min;
  double max;
  double mean;
  double stddev;  // population
  double median;
};

Summary summarize(std::span<const double> data) {
  if (data.empty()) throw DataError("empty data");
  Summary s{};
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
  s.min = *lo;
  s.max = *hi;
  if (!std::isfinite(s.min) || !std::isfinite(s.max)) throw DataError("data contains non-finite values");
  s.mean = std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
  double ss = 0.0;
  for (double x : data) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(data.size()));
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  s.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// ---------------------------------------------------------------------------
// Nelder–Mead simplex (reflection 1, expansion 2, contraction 1/2, shrink 1/2).

using Vec = std::vector<double>;
using Objective = std::function<double(const Vec&)>;

struct SimplexResult {
  Vec x;
  double f;
  bool converged;
  int iterations;
  int evaluations;
};

SimplexResult nelder_mead(const Objective& raw_f, Vec start, const Vec& steps, int max_evals, double tol) {
  const std::size_t n = start.size();
  int evals = 0;
  auto f = [&](const Vec& x) {
    ++evals;
    const double v = raw_f(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<Vec> pts(n + 1, start);
  Vec vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += steps[i];
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  int iterations = 0;
  bool converged = false;

  auto point = [n](const Vec& base, const Vec& dir_from, double t) {
    // base + t * (base - dir_from)
    Vec r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = base[k] + t * (base[k] - dir_from[k]);
    return r;
  };

  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

    if (std::isfinite(vals[best]) && vals[worst] - vals[best] <= tol * std::max(1.0, std::abs(vals[best]))) {
      converged = true;
      break;
    }
    if (evals >= max_evals) break;
    ++iterations;

    Vec centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }

    const Vec xr = point(centroid, pts[worst], 1.0);
    const double fr = f(xr);
    if (fr < vals[best]) {
      const Vec xe = point(centroid, pts[worst], 2.0);
      const double fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe, vals[worst] = fe;
      } else {
        pts[worst] = xr, vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr, vals[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflected point beats the worst, inside otherwise.
    const bool outside = fr < vals[worst];
    const Vec xc = outside ? point(centroid, pts[worst], 0.5) : point(centroid, pts[worst], -0.5);
    const double fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc, vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      vals[i] = f(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], converged, iterations, evals};
}

// Restarts a fresh simplex at the optimum until it stops improving; a
// collapsed simplex on a flat ridge is the usual failure mode for Burr fits.
SimplexResult minimize(const Objective& f, Vec start, const Vec& steps, const FitOptions& opt) {
  SimplexResult total = nelder_mead(f, std::move(start), steps, opt.max_evaluations, opt.tolerance);
  while (total.converged && total.evaluations < opt.max_evaluations) {
    SimplexResult again =
        nelder_mead(f, total.x, steps, opt.max_evaluations - total.evaluations, opt.tolerance);
    const bool improved = total.f - again.f > opt.tolerance * std::max(1.0, std::abs(total.f));
    total.iterations += again.iterations;
    total.evaluations += again.evaluations;
    if (again.f < total.f) {
      total.x = again.x;
      total.f = again.f;
    }
    total.converged = again.converged;
    if (!improved) break;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Reparameterizations: every component of the search vector is unconstrained.

struct Transform {
  double bound;  // location must stay strictly below this value

  double loc_to_free(double mu) const { return std::log(bound - mu); }
  double loc_from_free(double t) const { return bound - std::exp(t); }
};

double nll_gaussian(std::span<const double> data, double mu, double sigma) {
  double ss = 0.0;
  for (double x : data) ss += (x - mu) * (x - mu);
  const double n = static_cast<double>(data.size());
  return n * (std::log(sigma) + 0.5 * std::log(2.0 * std::numbers::pi)) + ss / (2.0 * sigma * sigma);
}

double nll_lognormal(std::span<const double> data, double s, double mu, double sigma) {
  double acc = 0.0;
  const double log_sigma = std::log(sigma);
  for (double x : data) {
    const double y = x - mu;
    if (!(y > 0.0)) return kInf;
    const double ly = std::log(y);
    const double lz = ly - log_sigma;
    acc += ly + lz * lz / (2.0 * s * s);
  }
  const double n = static_cast<double>(data.size());
  return acc + n * (std::log(s) + 0.5 * std::log(2.0 * std::numbers::pi));
}

double nll_burr(std::span<const double> data, double c, double d, double mu, double sigma) {
  double acc = 0.0;
  const double log_sigma = std::log(sigma);
  for (double x : data) {
    const double y = x - mu;
    if (!(y > 0.0)) return kInf;
    const double lz = std::log(y) - log_sigma;
    acc += (c - 1.0) * lz - (d + 1.0) * softplus(c * lz);
  }
  const double n = static_cast<double>(data.size());
  return -(acc + n * (std::log(c * d) - log_sigma));
}

ErrorDistribution lognormal_start(const Summary& s, const std::span<const double> data, const FitOptions& opt) {
  const double range = s.max - s.min;
  const double mu0 = std::min(s.min - 0.05 * range, s.min - 2.0 * opt.location_margin);
  const double sigma0 = s.median - mu0;
  double mean = 0.0;
  for (double x : data) mean += std::log((x - mu0) / sigma0);
  mean /= static_cast<double>(data.size());
  double ss = 0.0;
  for (double x : data) {
    const double l = std::log((x - mu0) / sigma0) - mean;
    ss += l * l;
  }
  const double s0 = std::sqrt(ss / static_cast<double>(data.size()));
  return LogNormal{std::max(s0, 1e-6), mu0, sigma0};
}

}  // namespace

EmpiricalPdf empirical_pdf(std::span<const double> data, std::size_t bins) {
  if (bins == 0) throw DomainError("histogram needs at least one bin");
  if (data.empty()) throw DataError("cannot build a histogram from empty data");
  const auto [lo_it, hi_it] = std::minmax_element(data.begin(), data.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DataError("data contains non-finite values");
  if (!(hi > lo)) throw DataError("degenerate data: all values are equal");

  EmpiricalPdf h;
  const double width = (hi - lo) / static_cast<double>(bins);
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i < bins; ++i) h.bin_edges[i] = lo + static_cast<double>(i) * width;
  h.bin_edges[bins] = hi;

  std::vector<std::size_t> counts(bins, 0);
  for (double x : data) {
    auto idx = static_cast<std::size_t>((x - lo) / width);
    counts[std::min(idx, bins - 1)]++;
  }
  const double norm = static_cast<double>(data.size()) * width;
  h.densities.resize(bins);
  for (std::size_t i = 0; i < bins; ++i) h.densities[i] = static_cast<double>(counts[i]) / norm;
  return h;
}

double sse(const EmpiricalPdf& hist, const ErrorDistribution& model) {
  double acc = 0.0;
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double diff = pdf(model, hist.bin_center(i)) - hist.densities[i];
    acc += diff * diff;
  }
  return acc;
}

ErrorDistribution initial_guess(Family family, std::span<const double> data, const FitOptions& options) {
  const Summary s = summarize(data);
  if (!(s.max > s.min)) throw DataError("degenerate data: all values are equal");
  switch (family) {
    case Family::gaussian: return Gaussian{s.mean, s.stddev};
    case Family::lognormal: return lognormal_start(s, data, options);
    case Family::burr12: {
      // Chained from the log-normal fit; falls back to the log-normal start.
      LogNormal ln = std::get<LogNormal>(lognormal_start(s, data, options).params());
      try {
        ln = std::get<LogNormal>(fit_mle(Family::lognormal, data, options).params.params());
      } catch (const FitError& e) {
        if (e.best()) ln = std::get<LogNormal>(e.best()->params.params());
      }
      return BurrXII{1.5 / ln.s, 1.0, ln.mu, ln.sigma};
    }
  }
  throw DomainError("unknown family");
}

FitResult fit_mle(Family family, std::span<const double> data, const FitOptions& options) {
  if (data.size() < kMinSamples) {
    throw DataError(fmt::format("maximum-likelihood fit needs at least {} samples (got {})", kMinSamples, data.size()));
  }
  const Summary s = summarize(data);
  if (!(s.max > s.min) || !(s.stddev > 0.0)) throw DataError("degenerate data: zero variance");

  const ErrorDistribution start = initial_guess(family, data, options);
  const Transform loc{s.min - options.location_margin};

  Objective objective;
  Vec x0, steps;
  std::function<ErrorDistribution(const Vec&)> decode;

  switch (family) {
    case Family::gaussian: {
      const auto g = std::get<Gaussian>(start.params());
      x0 = {g.mu, std::log(g.sigma)};
      steps = {0.1 * g.sigma, 0.1};
      objective = [data](const Vec& v) { return nll_gaussian(data, v[0], std::exp(v[1])); };
      decode = [](const Vec& v) { return ErrorDistribution(Gaussian{v[0], std::exp(v[1])}); };
      break;
    }
    case Family::lognormal: {
      const auto l = std::get<LogNormal>(start.params());
      x0 = {std::log(l.s), loc.loc_to_free(l.mu), std::log(l.sigma)};
      steps = {0.1, 0.1, 0.1};
      objective = [data, loc](const Vec& v) {
        return nll_lognormal(data, std::exp(v[0]), loc.loc_from_free(v[1]), std::exp(v[2]));
      };
      decode = [loc](const Vec& v) {
        return ErrorDistribution(LogNormal{std::exp(v[0]), loc.loc_from_free(v[1]), std::exp(v[2])});
      };
      break;
    }
    case Family::burr12: {
      const auto b = std::get<BurrXII>(start.params());
      x0 = {std::log(b.c), std::log(b.d), loc.loc_to_free(b.mu), std::log(b.sigma)};
      steps = {0.1, 0.1, 0.1, 0.1};
      objective = [data, loc](const Vec& v) {
        return nll_burr(data, std::exp(v[0]), std::exp(v[1]), loc.loc_from_free(v[2]), std::exp(v[3]));
      };
      decode = [loc](const Vec& v) {
        return ErrorDistribution(
            BurrXII{std::exp(v[0]), std::exp(v[1]), loc.loc_from_free(v[2]), std::exp(v[3])});
      };
      break;
    }
  }

  const SimplexResult r = minimize(objective, x0, steps, options);
  if (!std::isfinite(r.f)) throw NumericalError(fmt::format("{} fit: likelihood is not finite", to_string(family)));

  FitResult result{family, decode(r.x), r.f, 0.0, r.converged, r.iterations, r.evaluations};
  result.sse = sse(empirical_pdf(data, options.bins), result.params);
  if (!r.converged) {
    throw FitError(fmt::format("{} fit did not converge within {} likelihood evaluations", to_string(family),
                               options.max_evaluations),
                   result);
  }
  return result;
}

std::vector<RankedFit> select_best_model(std::span<const double> data, std::span<const Family> families,
                                         std::size_t bins, const FitOptions& options) {
  if (families.empty()) throw DomainError("select_best_model needs at least one family");
  const EmpiricalPdf hist = empirical_pdf(data, bins);

  std::vector<RankedFit> ranked;
  ranked.reserve(families.size());
  for (Family f : families) {
    try {
      FitResult fit = fit_mle(f, data, options);
      const double score = sse(hist, fit.params);
      ranked.push_back({f, std::move(fit), score, {}});
    } catch (const Error& e) {
      ranked.push_back({f, std::nullopt, kInf, e.what()});
    }
  }

  std::stable_sort(ranked.begin(), ranked.end(), [](const RankedFit& a, const RankedFit& b) {
    if (a.fit.has_value() != b.fit.has_value()) return a.fit.has_value();
    if (!a.fit) return false;
    if (std::abs(a.sse - b.sse) <= 1e-12) return parameter_count(a.family) < parameter_count(b.family);
    return a.sse < b.sse;
  });
  return ranked;
}

}  // namespace uwbsim
