#include "doctest.h"

#include "nematic/core.hpp"
#include "nematic/numerics.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

using namespace nematic;

TEST_CASE("gauss-legendre is exact up to degree 2n-1") {
  for (int n : {2, 4, 8, 16}) {
    const GaussRule& g = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    const int deg = 2 * n - 2;  // even, so the integral is nonzero
    double q = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) q += g.weights[k] * std::pow(g.nodes[k], deg);
    CHECK(q == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-13));
  }
}

TEST_CASE("composite quadrature") {
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi, 8, 8) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1, 8) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1001, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.1).epsilon(1e-14));
  CHECK(pairwise_sum(nullptr, 0) == 0.0);
}

TEST_CASE("bracketed roots") {
  auto f = [](double x) { return x * x - 2.0; };
  CHECK(std::abs(bracketed_root(f, 0.0, 2.0) - std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(brent_root(f, 0.0, 2.0) - std::sqrt(2.0)) < 1e-13);
  CHECK_THROWS_AS(bracketed_root(f, 2.0, 3.0, 1e-13, "test"), NoConvergence);
  try {
    bracketed_root(f, 2.0, 3.0, 1e-13, "ctx");
  } catch (const NoConvergence& e) {
    CHECK(std::string(e.what()).find("ctx") != std::string::npos);
  }
  CHECK(bracketed_root([](double x) { return x - 1.0; }, 1.0, 3.0) == 1.0);
}

TEST_CASE("sign change scan") {
  const auto b = sign_changes([](double x) { return std::sin(x); }, 0.5, 10.0, 200);
  REQUIRE(b.size() == 3);
  CHECK(b[0].first < kPi);
  CHECK(b[0].second > kPi);
}

TEST_CASE("golden section minimum") {
  const double x = golden_section_min([](double t) { return (t - 0.3) * (t - 0.3) + 1.0; }, -1.0, 2.0);
  CHECK(x == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("monotone cubic keeps monotone data monotone") {
  std::vector<double> x{0, 1, 2, 3, 4}, y{0, 0.1, 0.1, 2.0, 2.1};
  const MonotoneCubic m(x, y);
  double prev = m(0.0);
  for (int k = 1; k <= 400; ++k) {
    const double v = m(4.0 * k / 400);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
  CHECK(m(3.0) == doctest::Approx(2.0));
  CHECK(m(-1.0) == doctest::Approx(0.0));  // clamped
  CHECK(m.derivative(1.5) >= 0.0);
  CHECK_THROWS(MonotoneCubic({0, 1, 2}, {0, 1, 2}));
}

TEST_CASE("parallel_for covers every index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t k) { hits[k] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t k) {
                    if (k == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("worker count follows the environment cap") {
  setenv("NEMATIC_WALLS_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  setenv("NEMATIC_WALLS_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  unsetenv("NEMATIC_WALLS_THREADS");
  CHECK(worker_count() >= 1);
}
