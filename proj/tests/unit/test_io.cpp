#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "avgsamp/errors.hpp"
#include "avgsamp/io.hpp"

using namespace avgsamp;

TEST_CASE("numbers round-trip through their text form") {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, std::numbers::pi}) CHECK(std::stod(io::format_number(x)) == x);
  CHECK(io::format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(io::format_number(std::nan("")) == "nan");
}

TEST_CASE("kernel json") {
  const AverageKernel k(Profile::RaisedCosine, 0.25, 0.1, 0.3);
  const AverageKernel back = io::kernel_from_json(io::to_json(k));
  CHECK(back.profile() == k.profile());
  CHECK(back.center() == k.center());
  CHECK(back.left_radius() == k.left_radius());
  CHECK(back.right_radius() == k.right_radius());
  const auto w = io::kernel_from_json({{"profile", "triangle"}, {"width", 0.4}});
  CHECK(w.left_radius() == doctest::Approx(0.2));
  CHECK(w.right_radius() == doctest::Approx(0.2));
  CHECK_THROWS_AS(io::kernel_from_json({{"profile", "box"}, {"a", -0.1}, {"b", 0.1}}), InvalidArgument);
  CHECK_THROWS_AS(io::kernel_from_json({{"profile", "box"}, {"a", "x"}, {"b", 0.1}}), InvalidArgument);
  CHECK_THROWS_AS(io::kernel_from_json({{"profile", "gauss"}, {"width", 0.1}}), InvalidArgument);
}

TEST_CASE("measure, series, window and scheme json") {
  const SpectralMeasure m({{-1.5, 0.25}, {0.0, 0.5}, {1.5, 0.25}}, 2.0);
  const auto mb = io::measure_from_json(io::to_json(m));
  REQUIRE(mb.atoms().size() == 3);
  CHECK(mb.band_edge() == 2.0);
  CHECK(mb.total_mass() == doctest::Approx(1.0));

  const PWFunction f(0.8, {{-3, 0.5}, {2, -1.25}});
  const auto fb = io::pw_from_json(io::to_json(f));
  CHECK(fb.omega() == 0.8);
  CHECK(fb.coefficients() == f.coefficients());

  const auto w = io::window_from_json(io::to_json(GuardBandWindow(2.0, 4)));
  CHECK(w.omega == 2.0);
  CHECK(w.p == 4);
  CHECK_THROWS_AS(io::window_from_json({{"omega", 4.0}, {"p", 2}}), InvalidArgument);

  const auto s = SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.1), -1.0, 1.0, 0.5);
  const auto sb = io::scheme_from_json(io::to_json(s));
  CHECK(sb.centers() == s.centers());
  CHECK(sb.regime() == Regime::Oversampled);
  CHECK(sb.kernels().front().left_radius() == doctest::Approx(0.05));
}

TEST_CASE("averages csv") {
  const std::map<int, double> a{{-2, 0.125}, {0, -1.0 / 3.0}, {5, 7e-20}};
  CHECK(io::averages_from_csv(io::averages_csv(a)) == a);
  CHECK(io::averages_csv({{1, 0.5}}) == "n,value\n1,0.5\n");
  CHECK(io::averages_from_csv("3,1.5\n") == std::map<int, double>{{3, 1.5}});
  CHECK_THROWS_AS(io::averages_from_csv("n,value\n1;2\n"), InvalidArgument);
  CHECK_THROWS_AS(io::averages_from_csv("n,value\nx,2\n"), InvalidArgument);
}

TEST_CASE("error report csv and json") {
  ErrorReport r;
  r.experiment = "truncation";
  r.N = 8;
  r.trials = 100;
  r.mse = 0.25;
  r.stderr_ = 0.01;
  r.bound = std::numeric_limits<double>::infinity();
  r.satisfied = true;
  r.slope = -2.0;
  CHECK(io::error_reports_csv({r}) ==
        "experiment,N,mse,stderr,bound,satisfied,slope\ntruncation,8,0.25,0.01,inf,true,-2\n");
  r.slope.reset();
  r.allowance = 0.5;
  CHECK(io::error_reports_csv({r}, true) ==
        "experiment,N,mse,stderr,bound,satisfied,slope,allowance\ntruncation,8,0.25,0.01,inf,true,,0.5\n");
  const auto j = io::to_json(r);
  CHECK(j.at("bound").is_null());
  CHECK(j.at("slope").is_null());
  CHECK(j.at("N") == 8);
  CHECK_FALSE(j.contains("allowance"));
}

TEST_CASE("sample path csv") {
  SamplePath p;
  p.times = {0.0, 0.5};
  p.values = {1.0, -0.25};
  CHECK(io::path_csv(p) == "t,value\n0,1\n0.5,-0.25\n");
}

TEST_CASE("kernel table header") {
  const auto k = build_kernel(AverageKernel::symmetric(Profile::Box, 0, 0.3), GuardBandWindow(2.0, 3), {5.0});
  const auto h = io::kernel_header(k, {0.0, 0.7});
  CHECK(h.at("window").at("p") == 3);
  CHECK(h.at("A").get<double>() > 0.0);
  CHECK(h.at("A").get<double>() <= h.at("B").get<double>());
  REQUIRE(h.at("C_p").size() == 2);
  CHECK(h.at("C_p")[1].at("C_p").get<double>() == doctest::Approx(8.9204217475405842).epsilon(1e-8));
  const auto csv = io::kernel_csv(k);
  CHECK(csv.rfind("t,value\n-5,", 0) == 0);
}
