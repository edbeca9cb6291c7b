#include <doctest.h>

#include <cmath>
#include <numbers>

#include "avgsamp/quadrature.hpp"

using namespace avgsamp;

TEST_CASE("gauss20 integrates polynomials of degree 39 exactly") {
  const double v = quad::gauss20([](double x) { return std::pow(x, 38) + std::pow(x, 39); }, -1.0, 1.0);
  CHECK(v == doctest::Approx(2.0 / 39.0).epsilon(1e-14));
}

TEST_CASE("integrate handles break points and converges") {
  const std::vector<double> br{0.0, 1.0, std::numbers::pi};
  CHECK(quad::integrate([](double x) { return std::sin(x); }, std::span<const double>(br)) ==
        doctest::Approx(2.0).epsilon(1e-14));
  // |x - 1| has a kink at the break point.
  const std::vector<double> br2{0.0, 1.0, 3.0};
  CHECK(quad::integrate([](double x) { return std::abs(x - 1.0); }, std::span<const double>(br2)) ==
        doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("integrate works for complex integrands") {
  const auto v = quad::integrate([](double x) { return std::polar(1.0, x); }, 0.0, std::numbers::pi / 2);
  CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v.imag() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("integrate reports non-convergence") {
  quad::Options opt;
  opt.max_levels = 4;
  CHECK_THROWS_AS(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt),
                  QuadratureNotConverged);
  CHECK_THROWS_AS(quad::integrate([](double x) { return x; }, std::span<const double>()), InvalidArgument);
}

TEST_CASE("make_breaks sorts, clips and deduplicates") {
  const auto b = quad::make_breaks(0.0, 2.0, {1.0, 5.0, -1.0, 1.0, 0.5});
  CHECK(b == std::vector<double>{0.0, 0.5, 1.0, 2.0});
}

TEST_CASE("composite_rule weights sum to the interval length") {
  const std::vector<double> br{-1.0, 0.5, 2.0};
  const auto r = quad::composite_rule(std::span<const double>(br), 3);
  CHECK(r.x.size() == 2 * 3 * 20);
  double s = 0.0;
  for (double w : r.w) s += w;
  CHECK(s == doctest::Approx(3.0).epsilon(1e-14));
}
