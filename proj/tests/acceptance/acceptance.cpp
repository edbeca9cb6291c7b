// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "avgsamp/cli.hpp"
#include "avgsamp/kernels.hpp"
#include "avgsamp/recon_nyquist.hpp"
#include "avgsamp/spectral.hpp"
#include "avgsamp/stochastic.hpp"

using namespace avgsamp;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

cli::RunResult run(const std::string& kind, std::uint64_t seed, int threads, cli::json params = cli::json::object()) {
  cli::ExperimentConfig c;
  c.kind = kind;
  c.seed = seed;
  c.threads = threads;
  c.params = std::move(params);
  return cli::run_experiment(c);
}

Outcome thresholds() {
  const double d = 1.0 / (std::sqrt(2.0) * pi);
  const auto scheme = [](double gap) {
    return SamplingScheme::uniform(AverageKernel::symmetric(Profile::Box, 0, 0.05), 0.0, 40 * gap, gap);
  };
  const bool over = check_oversampled_condition(scheme(d - 1e-12), 1.0) &&
                    !check_oversampled_condition(scheme(d + 1e-12), 1.0) && std::abs(d - 0.2250791) < 1e-7;
  const double w = std::sqrt(2.0) / pi;
  const bool nyq = check_nyquist_condition(w / 2 - 1e-12, w / 2 - 1e-12) &&
                   !check_nyquist_condition(w / 2 + 1e-12, w / 2 + 1e-12) && std::abs(w - 0.45016) < 1e-5;
  return {over && nyq, fmt::format("oversampled threshold {:.7f}, nyquist box width {:.5f}", d, w)};
}

Outcome zak() {
  const auto r = run("zak-check", 0, 1);
  return {r.passed, fmt::format("max | |Z|-1 | = {:.2e}, sup |Z'| = {:.6f} (pi = {:.6f})",
                                r.report.at("results").at("max_unit_deviation").get<double>(),
                                r.report.at("results").at("sup_derivative").get<double>(), pi)};
}

Outcome nyquist() {
  const auto r = run("nyquist-recon", 1, 1);
  const auto& res = r.report.at("results");
  return {r.passed, fmt::format("10 functions, max error {:.3e} (< 1e-4), smallest tail bound {:.3e}",
                                res.at("max_error").get<double>(), res.at("min_tail_bound").get<double>())};
}

Outcome decay() {
  struct Case {
    AverageKernel u;
    GuardBandWindow w;
    double t;
  };
  const Case cases[] = {{AverageKernel::symmetric(Profile::Box, 0, 0.3), GuardBandWindow(2.0, 3), 0.7},
                        {AverageKernel::symmetric(Profile::Triangle, 0, 0.4), GuardBandWindow(2.3, 2), 0.25},
                        {AverageKernel::symmetric(Profile::RaisedCosine, 0, 0.3), GuardBandWindow(0.8 * pi, 4), 0.5}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto k = build_kernel(c.u, c.w, {502.0});
    const double C = decay_constant(c.u, c.w, c.t).C;
    double worst = 0.0;
    for (int n = -500; n <= 500; ++n)
      if (n != 0) worst = std::max(worst, std::abs(k(c.t - n)) * std::pow(std::abs(n), c.w.p));
    ok = ok && worst <= C;
    detail += fmt::format("{}{} p={}: max {:.4f} <= C {:.4f}", detail.empty() ? "" : "; ", to_string(c.u.profile()),
                          c.w.p, worst, C);
  }
  return {ok, detail};
}

Outcome truncation() {
  const auto r = run("truncation-bound", 2024, 1);
  std::string detail;
  for (const auto& row : r.report.at("results").at("rows"))
    detail += fmt::format("N={} mse {:.2e}+-{:.1e} bound {:.2e}; ", row.at("N").get<int>(), row.at("mse").get<double>(),
                          row.at("stderr").get<double>(), row.at("bound").get<double>());
  detail += fmt::format("non-increasing {}", r.report.at("results").at("non_increasing").get<bool>());
  return {r.passed && r.report.at("results").at("bound_applicable").get<bool>(), detail};
}

Outcome aliasing() {
  const double a = aliasing_error(flat_band_measure(2 * pi, 1.0, 4096));
  const auto r = run("aliasing", 2024, 1);
  const auto& row = r.report.at("results").at("row");
  return {std::abs(a - 0.5) <= 1.0 / 4096 && r.passed,
          fmt::format("out-of-band mass {}, empirical {:.4f} +- {:.4f}, allowance {:.2e}", a,
                      row.at("mse").get<double>(), row.at("stderr").get<double>(), row.at("allowance").get<double>())};
}

Outcome oversampled() {
  const auto r = run("oversampled-recon", 7, 1);
  const auto& res = r.report.at("results");
  double err = 0.0, gamma = 0.0;
  for (const auto& f : res.at("functions")) {
    err = std::max(err, f.at("coefficient_error").get<double>());
    gamma = std::max(gamma, f.at("max_gamma").get<double>());
  }
  return {r.passed && res.at("guarantee").get<bool>(),
          fmt::format("coefficient error {:.2e} (< 1e-8), largest residual ratio {:.3f}", err, gamma)};
}

Outcome biorthogonality() {
  const AverageKernel u = AverageKernel::symmetric(Profile::Box, 0, 0.3);
  const auto plain = build_kernel(u, std::nullopt, {16.0});
  double bio = 0.0;
  for (int m = -5; m <= 5; ++m)
    for (int n = -5; n <= 5; ++n) {
      const AverageKernel um = u.translated(m);
      const auto br = um.breakpoints();
      const double ip = quad::integrate([&](double t) { return um(t) * plain(t - n); }, std::span<const double>(br));
      bio = std::max(bio, std::abs(ip - (m == n ? 1.0 : 0.0)));
    }
  const auto k = build_kernel(u, GuardBandWindow(0.8 * pi, 3), {75.0});
  const PWFunction f(0.8, {{-2, 0.7}, {1, -0.4}, {4, 1.1}});
  const int N = 60;
  const auto avg = nyquist_averages(f, u, -N, N);
  double cons = 0.0;
  for (int m = -5; m <= 5; ++m) {
    const AverageKernel um = u.translated(m);
    const auto br = um.breakpoints();
    const double back =
        quad::integrate([&](double t) { return um(t) * reconstruct(avg, k, t, N); }, std::span<const double>(br));
    cons = std::max(cons, std::abs(back - avg.at(m)));
  }
  return {bio < 1e-6 && cons < 1e-6, fmt::format("max |<u_m, s_n> - delta| {:.2e}, max average mismatch {:.2e}", bio, cons)};
}

Outcome reproducibility() {
  bool ok = true;
  std::string detail;
  for (const auto& entry : cli::catalog()) {
    const auto a = run(entry.kind, 99, 1);
    const auto b = run(entry.kind, 99, 3);
    const bool same = a.csv == b.csv;
    ok = ok && same;
    detail += fmt::format("{}{} {}", detail.empty() ? "" : ", ", entry.kind, same ? "identical" : "DIFFERS");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"regime thresholds", thresholds},
      {"zak transform facts", zak},
      {"deterministic nyquist reconstruction", nyquist},
      {"kernel decay inequality", decay},
      {"mean-square truncation bound", truncation},
      {"aliasing error", aliasing},
      {"oversampled iteration", oversampled},
      {"biorthogonality and consistency", biorthogonality},
      {"reproducibility across threads", reproducibility},
  };
  int failures = 0;
  int i = 0;
  for (const auto& [name, check] : criteria) {
    ++i;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << fmt::format("criterion {}: {} - {} [{}] ({:.1f} s)", i, o.pass ? "PASS" : "FAIL", name, o.detail, secs)
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
