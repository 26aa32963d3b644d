#pragma once

// pchip in Boost 1.74 calls isnan unqualified
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace nematic {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule of the given order (cached per order).
const GaussRule& gauss_legendre(int order);

// Composite Gauss-Legendre over [a, b] with equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order);

// Pairwise tree sum; summation order depends only on the length.
double pairwise_sum(const double* v, std::size_t n);
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

// Root of f on [lo, hi] with f(lo), f(hi) of opposite sign. Bisection until the
// bracket is below tol, then up to three Newton polish steps kept inside the bracket.
// Throws NoConvergence if the endpoints do not bracket a root.
double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13,
                      const std::string& context = {});

// Brent-type (TOMS 748) bracketed root.
double brent_root(const std::function<double(double)>& f, double lo, double hi, const std::string& context = {});

// Sign changes of f on an n-interval uniform scan of [lo, hi]; each entry is a bracketing pair.
std::vector<std::pair<double, double>> sign_changes(const std::function<double(double)>& f, double lo, double hi,
                                                    int n);

// Minimizer of a unimodal f on [lo, hi] (golden-section with parabolic acceleration).
double golden_section_min(const std::function<double(double)>& f, double lo, double hi);

// Worker count: NEMATIC_WALLS_THREADS if set, else hardware concurrency.
int worker_count();

// Runs body(k) for k in [0, n). Each k is independent; results must be written to per-k slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Monotone cubic (PCHIP) interpolant of samples with strictly increasing abscissae.
class MonotoneCubic {
 public:
  using Impl = boost::math::interpolators::pchip<std::vector<double>>;

  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double derivative(double x) const;
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }

 private:
  std::shared_ptr<const Impl> impl_;
  double x_min_ = 0.0, x_max_ = 0.0;
};

}  // namespace nematic
