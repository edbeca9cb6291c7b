#include "avgsamp/recon_nyquist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/tools/minima.hpp>

#include "avgsamp/errors.hpp"

namespace avgsamp {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

double binom(int n, int k) { return boost::math::binomial_coefficient<double>(n, k); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Smoothstep coefficients: S_p(x) = Σ_k coef[k] x^{p+1+k}.
std::vector<double> smoothstep_coefficients(int p) {
  std::vector<double> c(p + 1);
  for (int k = 0; k <= p; ++k) c[k] = binom(p + k, k) * binom(2 * p + 1, p - k) * ((k & 1) ? -1.0 : 1.0);
  return c;
}

// Phase rotation is re-seeded exactly every this many table nodes.
constexpr int kReseedEvery = 64;
constexpr double kTableConvergenceTol = 1e-12;

}  // namespace

GuardBandWindow::GuardBandWindow(double inner_edge, int smoothness) : omega(inner_edge), p(smoothness) {
  if (!(inner_edge > 0.0 && inner_edge < kPi))
    throw InvalidArgument("window inner edge omega must lie in (0, pi) (got " + std::to_string(inner_edge) + ")");
  if (smoothness < 2 || smoothness > kMaxWindowSmoothness)
    throw InvalidArgument("window smoothness p must be in [2, " + std::to_string(kMaxWindowSmoothness) +
                          "] (got " + std::to_string(smoothness) + ")");
}

double smoothstep(int p, double x, int d) {
  if (d < 0) throw InvalidArgument("derivative order must be >= 0");
  const auto c = smoothstep_coefficients(p);
  double acc = 0.0;
  for (int k = 0; k <= p; ++k) {
    const int e = p + 1 + k;
    if (d > e) continue;
    // d^d/dx^d x^e = e!/(e-d)! x^{e-d}
    double falling = 1.0;
    for (int i = 0; i < d; ++i) falling *= e - i;
    acc += c[k] * falling * std::pow(x, e - d);
  }
  return acc;
}

double window_eval(const GuardBandWindow& w, double xi, int d) {
  if (d < 0) throw InvalidArgument("derivative order must be >= 0");
  if (d > w.p)
    throw DerivativeOrderExceeded("window derivative order " + std::to_string(d) + " exceeds smoothness p = " +
                                  std::to_string(w.p));
  const double ax = std::abs(xi);
  if (ax >= kPi) return 0.0;
  if (ax <= w.omega) return d == 0 ? 1.0 : 0.0;
  const double width = kPi - w.omega;
  const double x = (kPi - ax) / width;
  const double chain = std::pow((xi > 0.0 ? -1.0 : 1.0) / width, d);
  return smoothstep(w.p, x, d) * chain;
}

ReconstructionKernel::ReconstructionKernel(AverageKernel generator, std::optional<GuardBandWindow> window,
                                           TabulationSpec spec)
    : generator_(std::move(generator)), window_(window), spec_(spec), bounds_{0.0, 0.0} {
  if (!(spec.step > 0.0)) throw InvalidArgument("tabulation step must be > 0");
  if (!(spec.half_range > 0.0)) throw InvalidArgument("tabulation half range must be > 0");
  bounds_ = frame_bounds_shift_invariant(generator_);

  const auto count = static_cast<std::size_t>(std::ceil(2.0 * spec.half_range / spec.step - 1e-9)) + 1;
  nodes_.resize(count);
  for (std::size_t i = 0; i < count; ++i) nodes_[i] = -spec.half_range + spec.step * static_cast<double>(i);

  // s̃(t) = (1/π) ∫_0^π Re(H(ξ) e^{itξ}) dξ by Hermitian symmetry of H.
  std::vector<double> breaks{0.0, kPi};
  if (window_) breaks.insert(breaks.begin() + 1, window_->omega);
  const double tmax = std::max(1.0, std::max(std::abs(nodes_.front()), std::abs(nodes_.back())));

  struct Weighted {
    std::vector<double> xi;
    std::vector<cplx> h;  // w_k H(ξ_k) / π
  };
  auto make_rule = [&](int panels) {
    const quad::Rule r = quad::composite_rule(std::span<const double>(breaks), panels);
    Weighted out;
    out.xi = r.x;
    out.h.resize(r.x.size());
    for (std::size_t k = 0; k < r.x.size(); ++k) out.h[k] = spectrum(r.x[k]) * (r.w[k] / kPi);
    return out;
  };
  auto eval_at = [](const Weighted& r, double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < r.xi.size(); ++k) acc += (r.h[k] * std::polar(1.0, t * r.xi[k])).real();
    return acc;
  };

  // Panel width at most 10/t_max keeps the oscillation per GL-20 panel small;
  // doubling until the extreme nodes stop moving confirms the rule.
  int panels = static_cast<int>(std::ceil(kPi * tmax / 10.0)) + 1;
  Weighted rule = make_rule(panels);
  for (int attempt = 0;; ++attempt) {
    Weighted finer = make_rule(2 * panels);
    double worst = 0.0;
    for (double t : {nodes_.front(), 0.0, nodes_.back()})
      worst = std::max(worst, std::abs(eval_at(rule, t) - eval_at(finer, t)));
    if (worst < kTableConvergenceTol) break;
    if (attempt >= 6)
      throw QuadratureNotConverged("kernel tabulation did not converge (last change " + std::to_string(worst) + ")");
    panels *= 2;
    rule = std::move(finer);
  }

  const std::size_t K = rule.xi.size();
  std::vector<cplx> phase(K), rot(K);
  for (std::size_t k = 0; k < K; ++k) rot[k] = std::polar(1.0, spec.step * rule.xi[k]);
  values_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (i % kReseedEvery == 0)
      for (std::size_t k = 0; k < K; ++k) phase[k] = std::polar(1.0, nodes_[i] * rule.xi[k]);
    double acc = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      acc += rule.h[k].real() * phase[k].real() - rule.h[k].imag() * phase[k].imag();
      phase[k] *= rot[k];
    }
    values_[i] = acc;
  }

  auto slope_at = [&](double t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < K; ++k)
      acc += (cplx(0.0, rule.xi[k]) * rule.h[k] * std::polar(1.0, t * rule.xi[k])).real();
    return acc;
  };
  spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(
      values_.data(), values_.size(), nodes_.front(), spec.step, slope_at(nodes_.front()), slope_at(nodes_.back()));
}

std::complex<double> ReconstructionKernel::spectrum(double xi) const {
  if (std::abs(xi) > kPi) return {0.0, 0.0};
  const double theta = window_ ? window_eval(*window_, xi, 0) : 1.0;
  if (theta == 0.0) return {0.0, 0.0};
  return theta / std::conj(generator_.fourier(xi));
}

bool ReconstructionKernel::covers(double t) const { return t >= nodes_.front() && t <= nodes_.back(); }

double ReconstructionKernel::operator()(double t) const {
  if (!covers(t))
    throw TabulationRangeExceeded("kernel evaluated at t = " + std::to_string(t) + " outside the table [" +
                                  std::to_string(nodes_.front()) + ", " + std::to_string(nodes_.back()) + "]");
  return spline_(t);
}

double ReconstructionKernel::direct(double t, const quad::Options& opt) const {
  std::vector<double> interior;
  if (window_) interior.push_back(window_->omega);
  const int pieces = static_cast<int>(std::ceil(std::abs(t) * kPi / 10.0));
  for (int i = 1; i < pieces; ++i) interior.push_back(kPi * i / pieces);
  const auto breaks = quad::make_breaks(0.0, kPi, std::move(interior));
  return quad::integrate([&](double xi) { return (spectrum(xi) * std::polar(1.0, t * xi)).real(); },
                         std::span<const double>(breaks), opt) /
         kPi;
}

ReconstructionKernel build_kernel(const AverageKernel& u, std::optional<GuardBandWindow> window,
                                  TabulationSpec spec) {
  return ReconstructionKernel(u, window, spec);
}

std::vector<std::complex<double>> reciprocal_derivatives(const AverageKernel& u, double xi, int order) {
  if (order < 0) throw InvalidArgument("derivative order must be >= 0");
  std::vector<cplx> d(order + 1);
  for (int k = 0; k <= order; ++k) d[k] = u.fourier_derivative(xi, k);
  const cplx inv = 1.0 / d[0];

  // Partial Bell polynomials B[n][j] in the arguments d[1], d[2], ...
  std::vector<std::vector<cplx>> B(order + 1, std::vector<cplx>(order + 1));
  B[0][0] = 1.0;
  for (int n = 1; n <= order; ++n)
    for (int j = 1; j <= n; ++j) {
      cplx acc{0.0, 0.0};
      for (int i = 1; i <= n - j + 1; ++i) acc += binom(n - 1, i - 1) * d[i] * B[n - i][j - 1];
      B[n][j] = acc;
    }

  std::vector<cplx> out(order + 1);
  out[0] = inv;
  for (int k = 1; k <= order; ++k) {
    // f(y) = 1/y: f^{(j)}(y) = (-1)^j j! y^{-j-1}
    cplx acc{0.0, 0.0};
    cplx inv_pow = inv * inv;
    for (int j = 1; j <= k; ++j) {
      acc += ((j & 1) ? -1.0 : 1.0) * factorial(j) * inv_pow * B[k][j];
      inv_pow *= inv;
    }
    out[k] = acc;
  }
  return out;
}

std::complex<double> decay_integrand(const AverageKernel& u, const GuardBandWindow& w, double t, double xi) {
  const int p = w.p;
  const auto r = reciprocal_derivatives(u, xi, p);
  std::vector<double> theta(p + 1);
  for (int i = 0; i <= p; ++i) theta[i] = window_eval(w, xi, i);
  // (e^{-itξ})^{(j)} = (-it)^j e^{-itξ}
  std::vector<cplx> ph(p + 1);
  ph[0] = std::polar(1.0, -t * xi);
  for (int j = 1; j <= p; ++j) ph[j] = ph[j - 1] * cplx(0.0, -t);
  const double pf = factorial(p);
  cplx acc{0.0, 0.0};
  for (int i = 0; i <= p; ++i) {
    if (theta[i] == 0.0) continue;
    for (int j = 0; i + j <= p; ++j) {
      const int k = p - i - j;
      acc += pf / (factorial(i) * factorial(j) * factorial(k)) * theta[i] * ph[j] * r[k];
    }
  }
  return acc;
}

DecayBound decay_constant(const AverageKernel& u, const GuardBandWindow& w, double t, const quad::Options& opt) {
  auto mag = [&](double xi) { return std::abs(decay_integrand(u, w, t, xi)); };

  // |g| is smooth except where g vanishes; breaking at the local minima of |g|
  // keeps every piece smooth for the Gauss–Legendre refinement.
  const std::vector<double> base{-kPi, -w.omega, 0.0, w.omega, kPi};
  std::vector<double> interior{-w.omega, 0.0, w.omega};
  constexpr int kScan = 256;
  for (std::size_t piece = 0; piece + 1 < base.size(); ++piece) {
    const double lo = base[piece];
    const double h = (base[piece + 1] - lo) / kScan;
    std::vector<double> v(kScan + 1);
    for (int i = 0; i <= kScan; ++i) v[i] = mag(lo + i * h);
    for (int i = 1; i < kScan; ++i) {
      if (!(v[i] <= v[i - 1] && v[i] <= v[i + 1])) continue;
      std::uintmax_t iters = 200;
      const auto m = boost::math::tools::brent_find_minima(mag, lo + (i - 1) * h, lo + (i + 1) * h,
                                                           std::numeric_limits<double>::digits, iters);
      interior.push_back(m.first);
    }
  }
  const auto breaks = quad::make_breaks(-kPi, kPi, std::move(interior));
  const double integral = quad::integrate(mag, std::span<const double>(breaks), opt);
  return {w.p, t, integral / (2.0 * kPi)};
}

std::map<int, double> nyquist_averages(const PWFunction& f, const AverageKernel& u, int first, int last,
                                       const quad::Options& opt) {
  std::map<int, double> out;
  for (int n = first; n <= last; ++n) out.emplace(n, local_average(f, u.translated(n), opt));
  return out;
}

double reconstruct(const std::map<int, double>& averages, const ReconstructionKernel& kernel, double t, int N) {
  if (N < 0) throw InvalidArgument("truncation N must be >= 0");
  if (!kernel.covers(t - N) || !kernel.covers(t + N))
    throw TabulationRangeExceeded("reconstruction at t = " + std::to_string(t) + " with N = " + std::to_string(N) +
                                  " needs the kernel on [" + std::to_string(t - N) + ", " + std::to_string(t + N) +
                                  "], table is ±" + std::to_string(kernel.half_range()));
  double acc = 0.0;
  for (int n = -N; n <= N; ++n) {
    const auto it = averages.find(n);
    if (it == averages.end()) throw InvalidArgument("missing average for n = " + std::to_string(n));
    if (it->second != 0.0) acc += it->second * kernel(t - n);
  }
  return acc;
}

double tail_bound(const DecayBound& d, int N) {
  if (N < 1) throw InvalidArgument("tail bound needs N >= 1");
  return 2.0 * d.C * std::pow(static_cast<double>(N), 1.0 - d.p) / (d.p - 1);
}

}  // namespace avgsamp
