#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "avgsamp/recon_oversampled.hpp"

using namespace avgsamp;

namespace {

PWFunction series(double omega, std::map<int, double> c) { return PWFunction(omega, std::move(c)); }

std::vector<double> jittered_centers(double lo, double hi, double gap, double jitter, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-jitter, jitter);
  std::vector<double> out;
  for (double t = lo; t <= hi + 1e-12; t += gap) out.push_back(t + d(rng));
  return out;
}

double coefficient_error(const PWFunction& a, const PWFunction& b, int lo, int hi) {
  double e = 0.0;
  for (int n = lo; n <= hi; ++n) e = std::max(e, std::abs(a.coefficient(n) - b.coefficient(n)));
  return e;
}

}  // namespace

TEST_CASE("quasi-interpolant cells") {
  const auto s = SamplingScheme::translates(AverageKernel::symmetric(Profile::Box, 0, 0.1), {0.0, 1.0, 3.0},
                                            Regime::Oversampled);
  const auto q = quasi_interpolant({1.0, 2.0, 3.0}, s);
  REQUIRE(q.edges.size() == 4);
  CHECK(q.edges.front() == doctest::Approx(-0.5));
  CHECK(q.edges[1] == doctest::Approx(0.5));
  CHECK(q.edges[2] == doctest::Approx(2.0));
  CHECK(q.edges.back() == doctest::Approx(4.0));
  CHECK(q(0.2) == 1.0);
  CHECK(q(1.9) == 2.0);
  CHECK(q(3.9) == 3.0);
  CHECK(q(4.1) == 0.0);
  CHECK(q(-0.6) == 0.0);
  CHECK_THROWS_AS(quasi_interpolant({1.0, 2.0}, s), InvalidArgument);

  const auto one = SamplingScheme::translates(AverageKernel::symmetric(Profile::Box, 0, 0.1), {0.0},
                                              Regime::Oversampled);
  const auto q1 = quasi_interpolant({4.0}, one);
  CHECK(q1.edges == std::vector<double>{-0.5, 0.5});
  CHECK(q1(0.3) == 4.0);
}

TEST_CASE("approximation operator is linear") {
  const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -6.0, 6.0, 0.2);
  std::vector<double> x(s.size()), y(s.size()), z(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    x[i] = std::sin(0.7 * i);
    y[i] = std::cos(1.3 * i);
    z[i] = 2.0 * x[i] - 0.5 * y[i];
  }
  const auto ax = approx_operator(x, s, 1.0), ay = approx_operator(y, s, 1.0), az = approx_operator(z, s, 1.0);
  for (const auto& [n, c] : az.coefficients())
    CHECK(c == doctest::Approx(2.0 * ax.coefficient(n) - 0.5 * ay.coefficient(n)).epsilon(1e-9));
}

TEST_CASE("a dense scheme already approximates well after one step") {
  const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -15.0, 15.0, 0.2);
  const PWFunction f = series(1.0, {{-2, 0.8}, {0, 1.0}, {1, -0.6}, {4, 0.3}});
  const auto a = approx_operator(scheme_averages(f, s), s, 1.0);
  const auto [lo, hi] = trusted_interval(s, {});
  CHECK(grid_l2_norm(a - f, lo, hi, 1.0 / 32) < 0.25 * grid_l2_norm(f, lo, hi, 1.0 / 32));
}

TEST_CASE("iteration recovers a sinc series from irregular centers") {
  const auto centers = jittered_centers(-15.4, 15.4, 0.2, 0.01, 11);
  const auto s = SamplingScheme::translates(AverageKernel::symmetric(Profile::Triangle, 0, 0.1), centers,
                                            Regime::Oversampled);
  REQUIRE(check_oversampled_condition(s, 1.0));
  const PWFunction f = series(1.0, {{-3, 0.5}, {-1, -1.2}, {0, 0.9}, {2, 0.4}, {5, -0.7}});
  const auto st = iterate_reconstruct(scheme_averages(f, s), s, 1.0);
  CHECK(st.converged);
  CHECK(st.guarantee);
  CHECK(st.max_gamma < 1.0);
  CHECK(coefficient_error(st.estimate, f, -5, 5) < 1e-8);
  // Residuals contract geometrically.
  for (std::size_t k = 2; k < st.residuals.size(); ++k) CHECK(st.residuals[k] <= st.residuals[k - 1] * 1.0001);
}

TEST_CASE("the truth is a fixed point") {
  const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -15.0, 15.0, 0.2);
  const PWFunction f = series(1.0, {{-1, 1.0}, {3, -0.5}});
  IterationOptions opt;
  opt.initial = f;
  const auto st = iterate_reconstruct(scheme_averages(f, s), s, 1.0, opt);
  REQUIRE(!st.residuals.empty());
  CHECK(st.residuals.front() < 1e-10);
  CHECK(st.converged);
  CHECK(st.iterations <= 2);
}

TEST_CASE("all-zero averages give the zero function") {
  const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -12.0, 12.0, 0.2);
  const auto st = iterate_reconstruct(std::vector<double>(s.size(), 0.0), s, 1.0);
  CHECK(st.converged);
  for (const auto& [n, c] : st.estimate.coefficients()) CHECK(c == 0.0);
}

TEST_CASE("a violated condition is reported, not hidden") {
  const double omega = 1.0;
  const auto sparse = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -15.0, 15.0, 0.4);
  CHECK(0.4 > oversampled_threshold(omega));
  CHECK_FALSE(check_oversampled_condition(sparse, omega));
  const PWFunction f = series(omega, {{0, 1.0}, {2, -0.5}});
  IterationOptions opt;
  opt.max_iter = 60;
  try {
    const auto st = iterate_reconstruct(scheme_averages(f, sparse), sparse, omega, opt);
    CHECK_FALSE(st.guarantee);
  } catch (const Diverged& e) {
    CHECK_FALSE(e.state().guarantee);
    CHECK(e.state().residuals.size() >= 3);
  }
}

TEST_CASE("iteration options are validated") {
  const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -15.0, 15.0, 0.2);
  const std::vector<double> avg(s.size(), 0.0);
  IterationOptions opt;
  opt.tol = 0.0;
  CHECK_THROWS_AS(iterate_reconstruct(avg, s, 1.0, opt), InvalidArgument);
  opt = {};
  opt.max_iter = 0;
  CHECK_THROWS_AS(iterate_reconstruct(avg, s, 1.0, opt), InvalidArgument);
  CHECK_THROWS_AS(iterate_reconstruct(std::vector<double>(3, 0.0), s, 1.0), InvalidArgument);
  CHECK_THROWS_AS(iterate_reconstruct(avg, s, 0.0), InvalidArgument);
}

TEST_CASE("denser sampling converges in fewer iterations") {
  const PWFunction f = series(1.0, {{-2, 0.6}, {0, 1.0}, {3, -0.4}});
  int prev = 1 << 30;
  for (double gap : {0.2, 0.1, 0.05}) {
    const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, gap / 2), -15.0, 15.0, gap);
    const auto st = iterate_reconstruct(scheme_averages(f, s), s, 1.0);
    CHECK(st.converged);
    CHECK(st.iterations <= prev);
    prev = st.iterations;
  }
}
