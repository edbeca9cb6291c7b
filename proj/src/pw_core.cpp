#include "avgsamp/pw_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "avgsamp/errors.hpp"

namespace avgsamp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPruneThreshold = 1e-12;

// Splits x = k + r with k = round(x), |r| <= 1/2, so sin(πx) = (-1)^k sin(πr)
// keeps full relative accuracy for large x.
struct Reduced {
  long k;
  double r;
  double parity() const { return (k & 1) ? -1.0 : 1.0; }
};

Reduced reduce(double x) {
  const double k = std::nearbyint(x);
  return {static_cast<long>(k), x - k};
}

// Series for |x| < 1/2, where the closed form cancels.
double sinc_derivative_series(double x) {
  // d/dx Σ_k (-1)^k (πx)^{2k} / (2k+1)!
  double coef = -kPi * kPi / 6.0;  // (-1)^k π^{2k} / (2k+1)! at k = 1
  double sum = 0.0;
  double xpow = x;                 // x^{2k-1}
  for (int k = 1; k < 40; ++k) {
    const double term = coef * 2.0 * k * xpow;
    sum += term;
    if (std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)) && k > 1) break;
    coef *= -kPi * kPi / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    xpow *= x * x;
  }
  return sum;
}

double zak_profile_value(ZakProfile p, double x) {
  return p == ZakProfile::Sinc ? sinc(x) : sinc_derivative(x);
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - (kPi * x) * (kPi * x) / 6.0;
  const Reduced red = reduce(x);
  return red.parity() * std::sin(kPi * red.r) / (kPi * x);
}

double sinc_derivative(double x) {
  if (std::abs(x) < 0.5) return sinc_derivative_series(x);
  const Reduced red = reduce(x);
  const double s = red.parity() * std::sin(kPi * red.r);
  const double c = red.parity() * std::cos(kPi * red.r);
  return (kPi * x * c - s) / (kPi * x * x);
}

PWFunction::PWFunction(double omega, std::map<int, double> coeffs) : omega_(omega), coeffs_(std::move(coeffs)) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidArgument("PW bandwidth omega must be > 0");
}

double PWFunction::coefficient(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? 0.0 : it->second;
}

double PWFunction::operator()(double t) const {
  if (coeffs_.empty()) return 0.0;
  const double x = omega_ * t;
  const Reduced red = reduce(x);
  const double s = std::sin(kPi * red.r);  // sin(πx) = (-1)^k s
  double acc = 0.0;
  for (const auto& [n, c] : coeffs_) {
    if (n == red.k) {
      acc += c * sinc(red.r);
    } else {
      // sin(π(x - n)) = (-1)^{k+n} s
      const double d = red.r + static_cast<double>(red.k - n);
      const double sign = ((red.k - n) & 1) ? -1.0 : 1.0;
      acc += c * sign * s / (kPi * d);
    }
  }
  return acc;
}

double PWFunction::l2_norm() const { return std::sqrt(inner(*this)); }

double PWFunction::inner(const PWFunction& other) const {
  if (omega_ != other.omega_) throw InvalidArgument("inner product needs equal bandwidths");
  double acc = 0.0;
  for (const auto& [n, c] : coeffs_) acc += c * other.coefficient(n);
  return acc / omega_;
}

PWFunction& PWFunction::operator+=(const PWFunction& other) {
  if (omega_ != other.omega_) throw InvalidArgument("cannot add sinc series with different bandwidths");
  for (const auto& [n, c] : other.coeffs_) coeffs_[n] += c;
  return *this;
}

PWFunction& PWFunction::operator-=(const PWFunction& other) {
  if (omega_ != other.omega_) throw InvalidArgument("cannot subtract sinc series with different bandwidths");
  for (const auto& [n, c] : other.coeffs_) coeffs_[n] -= c;
  return *this;
}

PWFunction& PWFunction::operator*=(double s) {
  for (auto& [n, c] : coeffs_) c *= s;
  return *this;
}

PWFunction& PWFunction::prune(double threshold) {
  std::erase_if(coeffs_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
  return *this;
}

PWFunction operator+(PWFunction a, const PWFunction& b) { return a += b; }
PWFunction operator-(PWFunction a, const PWFunction& b) { return a -= b; }
PWFunction operator*(double s, PWFunction a) { return a *= s; }

double local_average(const PWFunction& f, const AverageKernel& k, const quad::Options& opt) {
  if (f.empty()) return 0.0;
  const auto breaks = k.breakpoints();
  return quad::integrate([&](double t) { return f(t) * k(t); }, std::span<const double>(breaks), opt);
}

CompactFunction CompactFunction::from_kernel(const AverageKernel& k) {
  return {[k](double t) { return k(t); }, k.support_lo(), k.support_hi(), k.breakpoints()};
}

CompactFunction CompactFunction::from_table(double t0, double step, std::vector<double> values) {
  if (values.size() < 2) throw InvalidArgument("tabulated function needs at least two samples");
  if (!(step > 0.0)) throw InvalidArgument("tabulation step must be > 0");
  const double lo = t0;
  const double hi = t0 + step * static_cast<double>(values.size() - 1);
  std::vector<double> breaks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) breaks[i] = t0 + step * static_cast<double>(i);
  breaks.back() = hi;
  auto f = [t0, step, lo, hi, v = std::move(values)](double t) {
    if (t < lo || t > hi) return 0.0;
    const double pos = (t - t0) / step;
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i >= v.size() - 1) i = v.size() - 2;
    const double w = pos - static_cast<double>(i);
    return (1.0 - w) * v[i] + w * v[i + 1];
  };
  return {std::move(f), lo, hi, std::move(breaks)};
}

CompactFunction CompactFunction::from_steps(std::vector<double> edges, std::vector<double> values) {
  if (values.empty() || edges.size() != values.size() + 1)
    throw InvalidArgument("step function needs edges.size() == values.size() + 1");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw InvalidArgument("step edges must be strictly increasing");
  const double lo = edges.front();
  const double hi = edges.back();
  auto f = [e = edges, v = std::move(values)](double t) {
    if (t < e.front() || t >= e.back()) return 0.0;
    const auto it = std::upper_bound(e.begin(), e.end(), t);
    return v[static_cast<std::size_t>(it - e.begin()) - 1];
  };
  return {std::move(f), lo, hi, std::move(edges)};
}

PWFunction project_pw(const CompactFunction& g, double omega, std::optional<IndexRange> range,
                      const quad::Options& opt) {
  if (!(omega > 0.0)) throw InvalidArgument("projection bandwidth must be > 0");
  if (g.breaks.size() < 2) throw InvalidArgument("projection input needs a support");
  const IndexRange r = range.value_or(IndexRange{static_cast<int>(std::floor(omega * g.lo)) - 32,
                                                 static_cast<int>(std::ceil(omega * g.hi)) + 32});
  std::map<int, double> coeffs;
  for (int n = r.first; n <= r.last; ++n) {
    const double c = omega * quad::integrate([&](double s) { return g.f(s) * sinc(omega * s - n); },
                                             std::span<const double>(g.breaks), opt);
    if (std::abs(c) >= kPruneThreshold) coeffs.emplace(n, c);
  }
  return PWFunction(omega, std::move(coeffs));
}

PWFunction project_pw(const PWFunction& f, double omega, IndexRange range) {
  if (!(omega > 0.0)) throw InvalidArgument("projection bandwidth must be > 0");
  std::map<int, double> coeffs;
  const double ratio = omega / f.omega();
  for (int m = range.first; m <= range.last; ++m) {
    double c = 0.0;
    if (ratio >= 1.0) {
      c = f(m / omega);
    } else {
      // P_{ω'} sinc(ω· - n) = (ω'/ω) sinc(ω'· - ω' n/ω)
      for (const auto& [n, cn] : f.coefficients()) c += cn * ratio * sinc(m - ratio * n);
    }
    if (std::abs(c) >= kPruneThreshold) coeffs.emplace(m, c);
  }
  return PWFunction(omega, std::move(coeffs));
}

double wsk_reconstruct(const std::map<int, double>& samples, double omega, double t, int N) {
  if (!(omega > 0.0)) throw InvalidArgument("sampling rate omega must be > 0");
  double acc = 0.0;
  for (auto it = samples.lower_bound(-N); it != samples.end() && it->first <= N; ++it)
    acc += it->second * sinc(omega * t - it->first);
  return acc;
}

std::complex<double> zak_transform(ZakProfile profile, double t, double xi, int M) {
  if (M < 1) throw InvalidArgument("Zak truncation M must be >= 1");
  std::complex<double> acc{0.0, 0.0};
  const std::complex<double> step = std::polar(1.0, xi);
  std::complex<double> phase;
  for (int n = -M; n <= M; ++n) {
    // Recompute the phase exactly every 64 terms to bound drift.
    if ((n + M) % 64 == 0) phase = std::polar(1.0, n * xi);
    acc += zak_profile_value(profile, t - n) * phase;
    phase *= step;
  }
  return acc;
}

std::vector<double> zak_magnitude_grid(ZakProfile profile, std::span<const double> ts,
                                       std::span<const double> xis, int M) {
  if (M < 1) throw InvalidArgument("Zak truncation M must be >= 1");
  std::vector<double> out;
  out.reserve(ts.size() * xis.size());
  std::vector<double> vals(2 * static_cast<std::size_t>(M) + 1);
  for (double t : ts) {
    for (int n = -M; n <= M; ++n) vals[n + M] = zak_profile_value(profile, t - n);
    for (double xi : xis) {
      const std::complex<double> step = std::polar(1.0, xi);
      std::complex<double> phase;
      std::complex<double> acc{0.0, 0.0};
      for (int n = -M; n <= M; ++n) {
        if ((n + M) % 64 == 0) phase = std::polar(1.0, n * xi);
        acc += vals[n + M] * phase;
        phase *= step;
      }
      out.push_back(std::abs(acc));
    }
  }
  return out;
}

}  // namespace avgsamp
