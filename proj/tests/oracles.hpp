#pragma once

// Reference computations used only by tests. Nothing here calls into the
// code path it is meant to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

/// Root of a monotone non-decreasing f with f(lo) < target <= f(hi), by bisection.
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Integral of f over [a, +inf): adaptive Gauss–Kronrod on a finite core
/// plus an exp-sinh tail.
inline double integrate_from(const std::function<double(double)>& f, double a, double split) {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::gauss_kronrod;
  const double core = gauss_kronrod<double, 61>::integrate(f, a, split, 20, 1e-14);
  exp_sinh<double> tail;
  return core + tail.integrate([&](double t) { return f(split + t); }, 1e-14);
}

/// Integral over the whole real line, split at the given points.
inline double integrate_line(const std::function<double(double)>& f, double lo, double hi) {
  using boost::math::quadrature::exp_sinh;
  using boost::math::quadrature::gauss_kronrod;
  exp_sinh<double> tail;
  const double left = tail.integrate([&](double t) { return f(lo - t); }, 1e-14);
  const double core = gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, 1e-14);
  const double right = tail.integrate([&](double t) { return f(hi + t); }, 1e-14);
  return left + core + right;
}

/// Kolmogorov–Smirnov distance between the sample ECDF and a CDF.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Dvoretzky–Kiefer–Wolfowitz bound sqrt(ln(2/alpha) / (2n)).
inline double dkw_bound(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

struct Vec3 {
  double x, y, z;
};

/// Global minimizer of f over the box [lo, hi] by exhaustive evaluation:
/// every node of a coarse lattice is evaluated, then every node of a fine
/// lattice in a neighbourhood of each of the best coarse local minima.
inline Vec3 grid_search(const std::function<double(double, double, double)>& f, Vec3 lo, Vec3 hi, double coarse,
                        double fine, std::size_t keep = 8) {
  const int nx = static_cast<int>(std::lround((hi.x - lo.x) / coarse)) + 1;
  const int ny = static_cast<int>(std::lround((hi.y - lo.y) / coarse)) + 1;
  const int nz = static_cast<int>(std::lround((hi.z - lo.z) / coarse)) + 1;
  std::vector<double> vals(static_cast<std::size_t>(nx) * ny * nz);
  auto idx = [=](int i, int j, int k) { return (static_cast<std::size_t>(i) * ny + j) * nz + k; };
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) vals[idx(i, j, k)] = f(lo.x + i * coarse, lo.y + j * coarse, lo.z + k * coarse);

  // Coarse local minima over the 26-neighbourhood.
  struct Cand {
    double v;
    int i, j, k;
  };
  std::vector<Cand> minima;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j)
      for (int k = 0; k < nz; ++k) {
        const double v = vals[idx(i, j, k)];
        bool is_min = true;
        for (int di = -1; di <= 1 && is_min; ++di)
          for (int dj = -1; dj <= 1 && is_min; ++dj)
            for (int dk = -1; dk <= 1 && is_min; ++dk) {
              const int a = i + di, b = j + dj, c = k + dk;
              if ((di || dj || dk) && a >= 0 && b >= 0 && c >= 0 && a < nx && b < ny && c < nz &&
                  vals[idx(a, b, c)] < v)
                is_min = false;
            }
        if (is_min) minima.push_back({v, i, j, k});
      }
  std::sort(minima.begin(), minima.end(), [](const Cand& a, const Cand& b) { return a.v < b.v; });
  if (minima.size() > keep) minima.resize(keep);

  Vec3 best{0, 0, 0};
  double best_v = std::numeric_limits<double>::infinity();
  const int span = static_cast<int>(std::lround(2.0 * coarse / fine));
  constexpr double eps = 1e-12;
  for (const Cand& c : minima) {
    const double cx = lo.x + c.i * coarse, cy = lo.y + c.j * coarse, cz = lo.z + c.k * coarse;
    for (int i = -span; i <= span; ++i)
      for (int j = -span; j <= span; ++j)
        for (int k = -span; k <= span; ++k) {
          const double x = cx + i * fine, y = cy + j * fine, z = cz + k * fine;
          if (x < lo.x - eps || y < lo.y - eps || z < lo.z - eps || x > hi.x + eps || y > hi.y + eps ||
              z > hi.z + eps)
            continue;
          const double v = f(x, y, z);
          if (v < best_v) best_v = v, best = {x, y, z};
        }
  }
  return best;
}

}  // namespace oracle
