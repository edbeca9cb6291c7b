#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "avgsamp/errors.hpp"
#include "avgsamp/pw_core.hpp"

using namespace avgsamp;
using std::numbers::pi;

TEST_CASE("sinc and its derivative") {
  CHECK(sinc(0.0) == 1.0);
  for (int n = 1; n < 200; ++n) {
    CHECK(sinc(n) == 0.0);
    CHECK(sinc(-n) == 0.0);
  }
  CHECK(sinc(0.5) == doctest::Approx(2.0 / pi).epsilon(1e-15));
  // Reference values: tests/oracles/oracles.py
  CHECK(sinc_derivative(0.3) == doctest::Approx(-0.90202813013888882).epsilon(1e-14));
  CHECK(sinc_derivative(2.5) == doctest::Approx(-0.050929581789406507).epsilon(1e-14));
  CHECK(sinc_derivative(0.0) == 0.0);
  // Continuity across the series / closed-form switch.
  CHECK(std::abs(sinc_derivative(0.5 - 1e-12) - sinc_derivative(0.5 + 1e-12)) < 1e-10);
  // sinc'(n) = (-1)^n / n
  CHECK(sinc_derivative(7.0) == doctest::Approx(-1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("sinc series evaluate exactly at the nodes") {
  const PWFunction f(1.0, {{0, 1.0}, {3, -2.0}});
  CHECK(f(0.0) == doctest::Approx(1.0));
  CHECK(f(3.0) == doctest::Approx(-2.0));
  CHECK(std::abs(f(1.0)) < 1e-15);
  CHECK(f(0.5) == doctest::Approx(2.0 / pi - 2.0 * sinc(-2.5)).epsilon(1e-14));
  const PWFunction g(0.8, {{-1, 0.5}, {2, 1.5}});
  CHECK(g(2.0 / 0.8) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(eval_pw(g, 0.37) == doctest::Approx(0.5 * sinc(0.8 * 0.37 + 1) + 1.5 * sinc(0.8 * 0.37 - 2)).epsilon(1e-14));
  CHECK(PWFunction(1.0)(12.3) == 0.0);
  CHECK_THROWS_AS(PWFunction(0.0), InvalidArgument);
}

TEST_CASE("L2 norm is exact and matches quadrature") {
  const PWFunction f(1.0, {{0, 1.0}});
  CHECK(f.l2_norm() == doctest::Approx(1.0));
  const PWFunction g(2.0, {{0, 1.0}, {1, 1.0}});
  CHECK(g.l2_norm() == doctest::Approx(1.0).epsilon(1e-15));
  // Numerical check on a long window; the tail ∫_{|t|>L} sinc² ~ 1/(π² L).
  const double L = 2000.0;
  std::vector<double> br;
  for (double x = -L; x <= L; x += 1.0) br.push_back(x);
  const double num = quad::integrate([&](double t) { return f(t) * f(t); }, std::span<const double>(br));
  CHECK(num == doctest::Approx(1.0 - 1.0 / (pi * pi * L)).epsilon(1e-6));
}

TEST_CASE("arithmetic on sinc series is linear") {
  const PWFunction f(1.0, {{0, 1.0}, {2, 0.5}});
  const PWFunction g(1.0, {{2, -0.5}, {4, 1.0}});
  const PWFunction h = 2.0 * f - g;
  CHECK(h.coefficient(0) == 2.0);
  CHECK(h.coefficient(2) == 1.5);
  CHECK(h.coefficient(4) == -1.0);
  for (double t : {-1.3, 0.2, 4.9}) CHECK(h(t) == doctest::Approx(2.0 * f(t) - g(t)).epsilon(1e-14));
  PWFunction z = f - f;
  CHECK(z.prune(1e-15).empty());
  CHECK_THROWS_AS(f + PWFunction(2.0), InvalidArgument);
}

TEST_CASE("local averages of sinc against a box") {
  // ⟨sinc, box width 1⟩ = ∫_{-1/2}^{1/2} sinc = (2/π) Si(π/2)
  const PWFunction f(1.0, {{0, 1.0}});
  CHECK(local_average(f, AverageKernel::symmetric(Profile::Box, 0, 1.0)) ==
        doctest::Approx(0.87265429946060272).epsilon(1e-13));
  CHECK(local_average(PWFunction(1.0), AverageKernel::symmetric(Profile::Box, 0, 1.0)) == 0.0);
}

TEST_CASE("projection of a box onto PW_pi") {
  const auto g = CompactFunction::from_kernel(AverageKernel::symmetric(Profile::Box, 0, 0.5));
  const PWFunction p = project_pw(g, 1.0);
  // Reference values: tests/oracles/oracles.py (c_0 = 4 Si(π/4)/π)
  CHECK(p.coefficient(0) == doctest::Approx(0.96635810527698586).epsilon(1e-12));
  CHECK(p.coefficient(1) == doctest::Approx(0.020335256003660729).epsilon(1e-11));
  CHECK(p.coefficient(-3) == doctest::Approx(0.0021841333391463962).epsilon(1e-10));
  // Default range covers the support ± 32 nodes.
  CHECK(p.coefficients().begin()->first >= -33);
  CHECK(p.coefficients().rbegin()->first <= 33);
}

TEST_CASE("projection is idempotent on band-limited inputs") {
  const PWFunction f(1.0, {{0, 1.0}, {1, -0.5}});
  const PWFunction same = project_pw(f, 1.0, {-5, 5});
  CHECK(same.coefficient(0) == doctest::Approx(1.0));
  CHECK(same.coefficient(1) == doctest::Approx(-0.5));
  CHECK(same.coefficient(3) == 0.0);
  // Onto a wider band the coefficients are samples at the finer nodes.
  const PWFunction wide = project_pw(f, 2.0, {-20, 20});
  for (int m = -20; m <= 20; ++m) CHECK(wide.coefficient(m) == doctest::Approx(f(m / 2.0)).epsilon(1e-14));
  // Onto a narrower band: P sinc = (1/2) sinc(t/2), so c_m = (1/2) sinc(m).
  const PWFunction narrow = project_pw(PWFunction(1.0, {{0, 1.0}}), 0.5, {-10, 10});
  CHECK(narrow.coefficient(0) == doctest::Approx(0.5));
  CHECK(narrow.coefficient(1) == doctest::Approx(0.5 * sinc(1.0)).epsilon(1e-12));
}

TEST_CASE("projection of a tabulated sinc is close to the sinc") {
  // sinc on [-40, 40] sampled at 1/64 and linearly interpolated: the
  // truncated tails and interpolation error limit agreement to about 5e-3.
  const double step = 1.0 / 64.0;
  std::vector<double> v;
  for (int i = 0; i <= 80 * 64; ++i) v.push_back(sinc(-40.0 + i * step));
  const PWFunction p = project_pw(CompactFunction::from_table(-40.0, step, std::move(v)), 1.0, IndexRange{-5, 5});
  CHECK(p.coefficient(0) == doctest::Approx(1.0).epsilon(5e-3));
  for (int n = 1; n <= 5; ++n) CHECK(std::abs(p.coefficient(n)) < 5e-3);
}

TEST_CASE("point-sampling reconstruction") {
  const PWFunction f(1.0, {{0, 1.0}, {3, -2.0}});
  std::map<int, double> samples;
  for (int n = -10; n <= 10; ++n) samples[n] = f(n);
  for (double t : {-2.5, 0.25, 3.3}) CHECK(wsk_reconstruct(samples, 1.0, t, 10) == doctest::Approx(f(t)).epsilon(1e-13));
  CHECK(wsk_reconstruct({}, 1.0, 0.3, 10) == 0.0);
}

TEST_CASE("Zak transform of sinc and its derivative") {
  // Z_sinc(0, ξ) = 1 for every ξ.
  for (double xi : {-pi, -1.0, 0.0, 2.0, pi}) CHECK(std::abs(zak_transform(ZakProfile::Sinc, 0.0, xi, 50) - 1.0) < 1e-13);
  // Z_sinc(t, ξ) → e^{itξ} for |ξ| < π.
  const auto z = zak_transform(ZakProfile::Sinc, 0.3, 1.0, 20000);
  CHECK(std::abs(z - std::polar(1.0, 0.3)) < 1e-4);
  // Z_{sinc'}(t, ξ) → iξ e^{itξ}.
  const auto zd = zak_transform(ZakProfile::SincDerivative, 0.3, 1.0, 20000);
  CHECK(std::abs(zd - std::complex<double>(0.0, 1.0) * std::polar(1.0, 0.3)) < 1e-3);
  // The grid helper matches the pointwise transform.
  const std::vector<double> ts{0.1, 0.6};
  const std::vector<double> xis{-2.0, 0.5, pi};
  const auto g = zak_magnitude_grid(ZakProfile::SincDerivative, ts, xis, 300);
  CHECK(g.size() == 6);
  CHECK(g[5] == doctest::Approx(std::abs(zak_transform(ZakProfile::SincDerivative, 0.6, pi, 300))).epsilon(1e-12));
  CHECK_THROWS_AS(zak_transform(ZakProfile::Sinc, 0.0, 0.0, 0), InvalidArgument);
}
