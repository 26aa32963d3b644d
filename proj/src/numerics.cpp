#include "nematic/numerics.hpp"

#include "nematic/core.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace nematic {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix.
GaussRule build_rule(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = es.eigenvalues()(k);
    // Newton polish on P_n
    for (int it = 0; it < 3; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      if (n == 1) break;
      x -= p1 / dp;
    }
    double p0 = 1.0, p1 = x;
    for (int m = 2; m <= n; ++m) {
      const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    r.nodes[k] = n == 1 ? 0.0 : x;
    r.weights[k] = n == 1 ? 2.0 : 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 64) throw std::invalid_argument("Gauss-Legendre order must be in [1, 64]");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels, int order) {
  const GaussRule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  std::vector<double> parts(static_cast<std::size_t>(panels));
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) s += g.weights[k] * f(mid + 0.5 * h * g.nodes[k]);
    parts[static_cast<std::size_t>(p)] = 0.5 * h * s;
  }
  return pairwise_sum(parts);
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double bracketed_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                      const std::string& context) {
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]";
    if (!context.empty()) msg << " (" << context << ")";
    throw NoConvergence(msg.str());
  }
  boost::uintmax_t iters = 400;
  auto br = boost::math::tools::bisect(
      f, lo, hi, [tol](double a, double b) { return std::abs(b - a) <= tol; }, iters);
  lo = br.first;
  hi = br.second;
  // polish: secant across the final bracket, accepted only if it stays inside
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    const double h = std::max(1e-3 * (hi - lo), 1e-15 * std::max(1.0, std::abs(x)));
    const double d = (f(x + h) - f(x - h)) / (2.0 * h);
    if (!(std::abs(d) > 0.0) || !std::isfinite(d)) break;
    const double xn = x - fx / d;
    if (!(xn >= lo && xn <= hi)) break;
    x = xn;
  }
  return x;
}

double brent_root(const std::function<double(double)>& f, double lo, double hi, const std::string& context) {
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!(flo * fhi < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change on [" << lo << ", " << hi << "]";
    if (!context.empty()) msg << " (" << context << ")";
    throw NoConvergence(msg.str());
  }
  boost::uintmax_t iters = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                             iters);
  return 0.5 * (r.first + r.second);
}

std::vector<std::pair<double, double>> sign_changes(const std::function<double(double)>& f, double lo, double hi,
                                                    int n) {
  std::vector<std::pair<double, double>> out;
  double xp = lo, fp = f(lo);
  for (int k = 1; k <= n; ++k) {
    const double x = lo + (hi - lo) * k / n;
    const double fx = f(x);
    if ((fp < 0.0 && fx > 0.0) || (fp > 0.0 && fx < 0.0) || (fx == 0.0 && fp != 0.0)) out.emplace_back(xp, x);
    xp = x;
    fp = fx;
  }
  return out;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi) {
  // Golden-section with parabolic steps; x-accuracy is limited to about sqrt(machine eps).
  boost::uintmax_t iters = 500;
  return boost::math::tools::brent_find_minima(f, lo, hi, std::numeric_limits<double>::digits / 2, iters).first;
}

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("NEMATIC_WALLS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mu;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = w; k < n; k += workers) body(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) {
  if (x.size() < 4 || y.size() != x.size()) throw std::invalid_argument("monotone cubic needs >= 4 matching samples");
  for (std::size_t k = 1; k < x.size(); ++k)
    if (!(x[k] > x[k - 1])) throw std::invalid_argument("monotone cubic abscissae must increase");
  x_min_ = x.front();
  x_max_ = x.back();
  impl_ = std::make_shared<const Impl>(std::move(x), std::move(y));
}

double MonotoneCubic::operator()(double x) const { return (*impl_)(std::clamp(x, x_min_, x_max_)); }

double MonotoneCubic::derivative(double x) const { return impl_->prime(std::clamp(x, x_min_, x_max_)); }

}  // namespace nematic
