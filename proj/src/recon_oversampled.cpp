#include "avgsamp/recon_oversampled.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace avgsamp {

namespace {

constexpr int kGrowthLimit = 3;

void require_oversampled(const SamplingScheme& scheme, std::size_t n_averages) {
  if (scheme.regime() != Regime::Oversampled)
    throw InvalidArgument("iterative reconstruction needs an Oversampled scheme");
  if (scheme.size() == 0) throw InvalidArgument("sampling scheme is empty");
  if (n_averages != scheme.size())
    throw InvalidArgument("got " + std::to_string(n_averages) + " averages for a scheme of " +
                          std::to_string(scheme.size()) + " kernels");
}

}  // namespace

double StepFunction::operator()(double t) const {
  if (values.empty() || t < edges.front() || t >= edges.back()) return 0.0;
  const auto it = std::upper_bound(edges.begin(), edges.end(), t);
  return values[static_cast<std::size_t>(it - edges.begin()) - 1];
}

CompactFunction StepFunction::as_compact() const { return CompactFunction::from_steps(edges, values); }

StepFunction quasi_interpolant(const std::vector<double>& averages, const SamplingScheme& scheme) {
  require_oversampled(scheme, averages.size());
  const auto& c = scheme.centers();
  const std::size_t n = c.size();
  StepFunction out;
  out.values = averages;
  out.edges.resize(n + 1);
  if (n == 1) {
    const double half = std::max(0.5 * scheme.support_delta(), 0.5);
    out.edges = {c[0] - half, c[0] + half};
    return out;
  }
  out.edges[0] = c[0] - 0.5 * (c[1] - c[0]);
  for (std::size_t i = 1; i < n; ++i) out.edges[i] = 0.5 * (c[i - 1] + c[i]);
  out.edges[n] = c[n - 1] + 0.5 * (c[n - 1] - c[n - 2]);
  return out;
}

IndexRange default_index_range(const SamplingScheme& scheme, double omega, double margin) {
  if (!(omega > 0.0)) throw InvalidArgument("bandwidth omega must be > 0");
  const double lo = scheme.centers().front();
  const double hi = scheme.centers().back();
  if (margin > 0.0 && hi - lo > 2.0 * margin)
    return {static_cast<int>(std::ceil(omega * (lo + margin))), static_cast<int>(std::floor(omega * (hi - margin)))};
  return {static_cast<int>(std::floor(omega * lo)), static_cast<int>(std::ceil(omega * hi))};
}

PWFunction approx_operator(const std::vector<double>& averages, const SamplingScheme& scheme, double omega,
                           std::optional<IndexRange> range) {
  const StepFunction q = quasi_interpolant(averages, scheme);
  if (std::all_of(averages.begin(), averages.end(), [](double v) { return v == 0.0; })) return PWFunction(omega);
  return project_pw(q.as_compact(), omega, range.value_or(default_index_range(scheme, omega)));
}

std::vector<double> scheme_averages(const PWFunction& f, const SamplingScheme& scheme, const quad::Options& opt) {
  std::vector<double> out;
  out.reserve(scheme.size());
  for (const auto& k : scheme.kernels()) out.push_back(local_average(f, k, opt));
  return out;
}

std::pair<double, double> trusted_interval(const SamplingScheme& scheme, const IterationOptions& opt) {
  double lo = scheme.centers().front();
  double hi = scheme.centers().back();
  if (hi - lo > 2.0 * opt.margin) {
    lo += opt.margin;
    hi -= opt.margin;
  }
  const double trim = 0.5 * (1.0 - opt.trusted_fraction) * (hi - lo);
  return {lo + trim, hi - trim};
}

double grid_l2_norm(const PWFunction& f, double lo, double hi, double h) {
  if (!(h > 0.0)) throw InvalidArgument("grid step must be > 0");
  const auto n = static_cast<long>(std::floor((hi - lo) / h + 1e-9));
  double acc = 0.0;
  for (long i = 0; i <= n; ++i) {
    const double v = f(lo + h * static_cast<double>(i));
    acc += v * v;
  }
  return std::sqrt(h * acc);
}

IterationState iterate_reconstruct(const std::vector<double>& averages, const SamplingScheme& scheme, double omega,
                                   const IterationOptions& opt) {
  require_oversampled(scheme, averages.size());
  if (!(opt.tol > 0.0)) throw InvalidArgument("iteration tolerance must be > 0");
  if (opt.max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (!(opt.trusted_fraction > 0.0 && opt.trusted_fraction <= 1.0))
    throw InvalidArgument("trusted fraction must lie in (0, 1]");

  const IndexRange range = opt.range.value_or(default_index_range(scheme, omega, opt.margin));
  const auto [lo, hi] = trusted_interval(scheme, opt);

  IterationState st;
  st.guarantee = check_oversampled_condition(scheme, omega);
  const PWFunction a0 = approx_operator(averages, scheme, omega, range);
  PWFunction f = opt.initial ? *opt.initial : a0;

  int growth = 0;
  for (int k = 0; k < opt.max_iter; ++k) {
    PWFunction next = f + a0 - approx_operator(scheme_averages(f, scheme), scheme, omega, range);
    const double r = grid_l2_norm(next - f, lo, hi, opt.grid_step);
    f = std::move(next);
    st.iterations = k + 1;
    if (!st.residuals.empty() && st.residuals.back() > 0.0) {
      st.gamma = r / st.residuals.back();
      st.max_gamma = std::max(st.max_gamma, st.gamma);
      growth = r > st.residuals.back() ? growth + 1 : 0;
    }
    st.residuals.push_back(r);
    st.estimate = f;
    if (r < opt.tol) {
      st.converged = true;
      break;
    }
    if (growth >= kGrowthLimit)
      throw Diverged("residuals grew " + std::to_string(kGrowthLimit) + " times in a row (last " + std::to_string(r) +
                         ")" + (st.guarantee ? "" : "; the oversampling condition does not hold"),
                     st);
  }
  st.estimate = f;
  return st;
}

}  // namespace avgsamp
