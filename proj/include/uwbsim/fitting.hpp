#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uwbsim/distributions.hpp"
#include "uwbsim/error.hpp"

namespace uwbsim {

/// Equal-width histogram normalized to integrate to one.
struct EmpiricalPdf {
  std::vector<double> bin_edges;  // B + 1 strictly increasing edges (m)
  std::vector<double> densities;  // B densities (1/m)

  std::size_t bins() const { return densities.size(); }
  double bin_width() const { return bin_edges[1] - bin_edges[0]; }
  double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
};

inline constexpr std::size_t kDefaultBins = 200;

/// Bins span [min(data), max(data)]; the last bin is closed on the right.
/// Throws DataError on empty or constant data, DomainError for bins == 0.
EmpiricalPdf empirical_pdf(std::span<const double> data, std::size_t bins = kDefaultBins);

/// Sum of squared differences between the model density at each bin center
/// and the histogram density.
double sse(const EmpiricalPdf& hist, const ErrorDistribution& model);

struct FitOptions {
  int max_evaluations = 2000;
  /// Converged when the simplex nll spread is below tolerance * max(1, |nll|).
  double tolerance = 1e-10;
  /// Location parameters of supported-above families stay below min(data) - margin.
  double location_margin = 1e-6;
  /// Histogram resolution used for FitResult::sse.
  std::size_t bins = kDefaultBins;
};

struct FitResult {
  Family family;
  ErrorDistribution params;
  double nll;       // negative log-likelihood
  double sse;       // against empirical_pdf(data, options.bins)
  bool converged;
  int iterations;   // simplex iterations
  int evaluations;  // likelihood evaluations
};

/// Thrown when the evaluation budget is exhausted; carries the best point found.
class FitError : public NumericalError {
 public:
  FitError(const std::string& what, std::optional<FitResult> best)
      : NumericalError(what), best_(std::move(best)) {}
  const std::optional<FitResult>& best() const { return best_; }

 private:
  std::optional<FitResult> best_;
};

/// Maximum-likelihood fit by Nelder–Mead on an unconstrained
/// reparameterization. Deterministic for a given data set.
FitResult fit_mle(Family family, std::span<const double> data, const FitOptions& options = {});

/// Starting point used by fit_mle (exposed for inspection and tests).
ErrorDistribution initial_guess(Family family, std::span<const double> data, const FitOptions& options = {});

struct RankedFit {
  Family family;
  std::optional<FitResult> fit;  // empty when the fit failed
  double sse;                    // +inf on failure
  std::string error;             // failure message, empty on success
};

/// Fits every family and sorts by SSE against the histogram, ascending.
/// SSE ties (within 1e-12) go to the family with fewer parameters; failed
/// fits are ranked last.
std::vector<RankedFit> select_best_model(std::span<const double> data, std::span<const Family> families,
                                         std::size_t bins = kDefaultBins, const FitOptions& options = {});

}  // namespace uwbsim
