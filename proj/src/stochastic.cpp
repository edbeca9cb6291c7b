#include "avgsamp/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "avgsamp/errors.hpp"
#include "avgsamp/parallel.hpp"

namespace avgsamp {

namespace {

constexpr double kPi = std::numbers::pi;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SampleStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};

SampleStats stats(const std::vector<double>& x) {
  const auto n = static_cast<double>(x.size());
  CompensatedSum s;
  for (double v : x) s.add(v);
  const double mean = s.value() / n;
  CompensatedSum ss;
  for (double v : x) ss.add((v - mean) * (v - mean));
  const double var = x.size() > 1 ? ss.value() / (n - 1.0) : 0.0;
  return {mean, std::sqrt(var / n)};
}

// Per positive-frequency atom: the error X(t) - X_N(t) is
// Σ_j σ_j (ξ_j dc_j + η_j ds_j) with dc_j = cos λ_j t - α_j, ds_j = sin λ_j t - β_j,
// where α_j, β_j collect Σ_n s̃(t - n) times the average moments.
struct ErrorWeights {
  std::vector<double> dc;
  std::vector<double> ds;
};

ErrorWeights error_weights(const OneSidedSpectrum& spec, const AverageKernel& u, const ReconstructionKernel& kernel,
                           double t, int N, bool project, bool in_band_only = false) {
  if (!kernel.covers(t - N) || !kernel.covers(t + N))
    throw TabulationRangeExceeded("kernel table ±" + std::to_string(kernel.half_range()) + " does not cover t ± N = " +
                                  std::to_string(t) + " ± " + std::to_string(N));
  std::vector<double> sk(2 * N + 1);
  for (int n = -N; n <= N; ++n) sk[n + N] = kernel(t - n);
  const std::size_t J = spec.frequencies.size();
  ErrorWeights w{std::vector<double>(J), std::vector<double>(J)};
  for (std::size_t j = 0; j < J; ++j) {
    const double lam = spec.frequencies[j];
    const bool out_of_band = lam > kPi;
    if (in_band_only && out_of_band) continue;
    std::complex<double> acc{0.0, 0.0};
    if (!(project && out_of_band)) {
      // Σ_n s̃(t - n) e^{-inλ} û(λ); cos moment = Re, sin moment = -Im.
      const std::complex<double> rot = std::polar(1.0, lam);
      std::complex<double> ph = std::polar(1.0, N * lam);  // e^{-inλ} at n = -N
      for (int n = -N; n <= N; ++n) {
        if (((n + N) & 63) == 0) ph = std::polar(1.0, -n * lam);
        acc += sk[n + N] * ph;
        ph *= std::conj(rot);
      }
      acc *= u.fourier(lam);
    }
    w.dc[j] = std::cos(lam * t) - acc.real();
    w.ds[j] = std::sin(lam * t) + acc.imag();
  }
  return w;
}

double exact_mse(const OneSidedSpectrum& spec, const ErrorWeights& w) {
  CompensatedSum s;
  for (std::size_t j = 0; j < w.dc.size(); ++j)
    s.add(spec.sigmas[j] * spec.sigmas[j] * (w.dc[j] * w.dc[j] + w.ds[j] * w.ds[j]));
  return s.value();
}

// errors[k][trial] for each weight set, one realisation per trial shared by all sets.
std::vector<std::vector<double>> monte_carlo_errors(const SpectralMeasure& model, const std::vector<ErrorWeights>& ws,
                                                    int trials, std::uint64_t seed, int threads) {
  std::vector<std::vector<double>> errors(ws.size(), std::vector<double>(trials));
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t i) {
    const PathRealization path = realize(model, trial_seed(seed, i));
    const auto& a = path.cos_amplitudes();
    const auto& b = path.sin_amplitudes();
    for (std::size_t k = 0; k < ws.size(); ++k) {
      double e = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) e += a[j] * ws[k].dc[j] + b[j] * ws[k].ds[j];
      errors[k][i] = e;
    }
  });
  return errors;
}

void fill_stats(ErrorReport& r, const std::vector<double>& e) {
  std::vector<double> sq(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) sq[i] = e[i] * e[i];
  const SampleStats m = stats(sq);
  const SampleStats b = stats(e);
  r.mse = m.mean;
  r.stderr_ = m.stderr_;
  r.bias = b.mean;
  r.bias_stderr = b.stderr_;
}

}  // namespace

PathAverager::PathAverager(const SpectralMeasure& model, const AverageKernel& u, int first, int last, bool project)
    : first_(first), last_(last) {
  if (last < first) throw InvalidArgument("average index range is empty");
  const OneSidedSpectrum spec = one_sided(model);
  freq_ = spec.frequencies;
  const std::size_t J = freq_.size();
  const auto rows = static_cast<std::size_t>(last - first + 1);
  cos_moment_.assign(rows * J, 0.0);
  sin_moment_.assign(rows * J, 0.0);
  for (std::size_t j = 0; j < J; ++j) {
    if (project && freq_[j] > kPi) continue;
    const std::complex<double> uh = u.fourier(freq_[j]);
    for (std::size_t r = 0; r < rows; ++r) {
      const int n = first + static_cast<int>(r);
      const std::complex<double> v = uh * std::polar(1.0, -n * freq_[j]);
      cos_moment_[r * J + j] = v.real();
      sin_moment_[r * J + j] = -v.imag();
    }
  }
}

std::map<int, double> PathAverager::operator()(const PathRealization& path) const {
  if (path.frequencies() != freq_) throw InvalidArgument("path does not belong to the averager's model");
  const std::size_t J = freq_.size();
  const auto& a = path.cos_amplitudes();
  const auto& b = path.sin_amplitudes();
  std::map<int, double> out;
  for (int n = first_; n <= last_; ++n) {
    const std::size_t r = static_cast<std::size_t>(n - first_);
    double acc = 0.0;
    for (std::size_t j = 0; j < J; ++j) acc += a[j] * cos_moment_[r * J + j] + b[j] * sin_moment_[r * J + j];
    out.emplace(n, acc);
  }
  return out;
}

std::map<int, double> path_averages(const PathRealization& path, const AverageKernel& u, int first, int last,
                                    const quad::Options& opt) {
  std::map<int, double> out;
  for (int n = first; n <= last; ++n) {
    const AverageKernel k = u.translated(n);
    const auto breaks = k.breakpoints();
    out.emplace(n, quad::integrate([&](double s) { return path(s) * k(s); }, std::span<const double>(breaks), opt));
  }
  return out;
}

double ase_reconstruct_path(const std::map<int, double>& averages, const ReconstructionKernel& kernel, double t,
                            int N) {
  return reconstruct(averages, kernel, t, N);
}

double mse_truncation_bound(double R0, const DecayBound& decay, int N) {
  if (decay.p < 2) throw InvalidArgument("truncation bound needs p >= 2");
  if (N < 1) throw InvalidArgument("truncation bound needs N >= 1");
  if (!(R0 >= 0.0)) throw InvalidArgument("R_X(0) must be >= 0");
  const double pm1 = decay.p - 1.0;
  return 4.0 * R0 * decay.C * decay.C / (pm1 * pm1 * std::pow(static_cast<double>(N), 2.0 * pm1));
}

double aliasing_error(const SpectralMeasure& m) {
  CompensatedSum s;
  for (const auto& a : m.atoms())
    if (std::abs(a.frequency) > kPi) s.add(a.mass);
  return s.value();
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / den;
}

std::vector<ErrorReport> empirical_mse(const TruncationExperiment& exp) {
  if (!exp.model || !exp.kernel) throw InvalidArgument("truncation experiment needs a model and a kernel");
  if (exp.trials < 100) throw InvalidArgument("truncation experiment needs trials >= 100 (got " +
                                              std::to_string(exp.trials) + ")");
  if (exp.Ns.empty()) throw InvalidArgument("truncation experiment needs at least one N");
  for (int N : exp.Ns)
    if (N < 1) throw InvalidArgument("truncation N must be >= 1 (got " + std::to_string(N) + ")");

  const ReconstructionKernel& kernel = *exp.kernel;
  const OneSidedSpectrum spec = one_sided(*exp.model);
  std::vector<ErrorWeights> ws;
  for (int N : exp.Ns) ws.push_back(error_weights(spec, kernel.generator(), kernel, exp.t, N, false));
  const auto errors = monte_carlo_errors(*exp.model, ws, exp.trials, exp.seed, exp.threads);

  std::optional<DecayBound> decay;
  if (kernel.window()) decay = decay_constant(kernel.generator(), *kernel.window(), exp.t);
  const double R0 = exp.model->total_mass();

  std::vector<ErrorReport> out;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < exp.Ns.size(); ++k) {
    ErrorReport r;
    r.experiment = "truncation-bound";
    r.N = exp.Ns[k];
    r.trials = exp.trials;
    fill_stats(r, errors[k]);
    r.exact = exact_mse(spec, ws[k]);
    r.bound = decay ? mse_truncation_bound(R0, *decay, r.N) : std::numeric_limits<double>::infinity();
    r.satisfied = r.mse - 3.0 * r.stderr_ <= r.bound;
    xs.push_back(r.N);
    ys.push_back(r.mse);
    out.push_back(r);
  }
  const auto slope = loglog_slope(xs, ys);
  for (auto& r : out) r.slope = slope;
  return out;
}

bool mse_non_increasing(const std::vector<ErrorReport>& sweep) {
  for (std::size_t k = 0; k + 1 < sweep.size(); ++k) {
    const double margin = 3.0 * std::hypot(sweep[k].stderr_, sweep[k + 1].stderr_);
    if (sweep[k + 1].mse > sweep[k].mse + margin) return false;
  }
  return true;
}

ErrorReport empirical_aliasing(const AliasingExperiment& exp) {
  if (!exp.model || !exp.kernel) throw InvalidArgument("aliasing experiment needs a model and a kernel");
  if (exp.kernel->window()) throw InvalidArgument("aliasing experiment needs the kernel without a window");
  if (exp.trials < 100) throw InvalidArgument("aliasing experiment needs trials >= 100 (got " +
                                              std::to_string(exp.trials) + ")");
  if (exp.N < 1) throw InvalidArgument("aliasing N must be >= 1");
  const ReconstructionKernel& kernel = *exp.kernel;
  const OneSidedSpectrum spec = one_sided(*exp.model);
  const ErrorWeights w = error_weights(spec, kernel.generator(), kernel, exp.t, exp.N, true);
  const auto errors = monte_carlo_errors(*exp.model, {w}, exp.trials, exp.seed, exp.threads);

  ErrorReport r;
  r.experiment = "aliasing";
  r.N = exp.N;
  r.trials = exp.trials;
  fill_stats(r, errors[0]);
  r.exact = exact_mse(spec, w);
  r.bound = aliasing_error(*exp.model);
  // Out-of-band atoms are invisible to the averages, so the in-band part of
  // the error is exactly the truncation error of the in-band process.
  r.allowance = exact_mse(spec, error_weights(spec, kernel.generator(), kernel, exp.t, exp.N, true, true));
  r.satisfied = std::abs(r.mse - r.bound) <= 3.0 * r.stderr_ + r.allowance;
  return r;
}

double pathwise_max_error(const SpectralMeasure& model, const PathRealization& path,
                          const ReconstructionKernel& kernel, const std::vector<double>& ts, int N) {
  const auto avg = PathAverager(model, kernel.generator(), -N, N)(path);
  double worst = 0.0;
  for (double t : ts) worst = std::max(worst, std::abs(path(t) - reconstruct(avg, kernel, t, N)));
  return worst;
}

}  // namespace avgsamp
