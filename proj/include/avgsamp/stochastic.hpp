#pragma once

// Averaged-sampling expansions applied to sample paths of band-limited WSS
// processes: path averages, truncated reconstruction, the mean-square
// truncation bound, aliasing error, and their Monte Carlo checks.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "avgsamp/recon_nyquist.hpp"
#include "avgsamp/spectral.hpp"

namespace avgsamp {

/// Averages ⟨X, u(· - n)⟩ of analytic sample paths.
///
/// For X = Σ a_j cos(λ_j t) + b_j sin(λ_j t) the average against u_n is
/// Σ a_j Re û_n(λ_j) - b_j Im û_n(λ_j) with û_n(λ) = e^{-inλ} û(λ), so the
/// moments are exact (closed-form û) and computed once per model. With
/// `project` set, moments of atoms with |λ| > π are zeroed: the averages are
/// then taken against Pu(· - n).
class PathAverager {
 public:
  PathAverager(const SpectralMeasure& model, const AverageKernel& u, int first, int last, bool project = false);

  int first() const { return first_; }
  int last() const { return last_; }
  std::map<int, double> operator()(const PathRealization& path) const;

 private:
  std::vector<double> freq_;
  int first_;
  int last_;
  std::vector<double> cos_moment_;  // row-major [n - first][j]
  std::vector<double> sin_moment_;
};

// ⟨X, u(· - n)⟩ for n = first .. last by direct quadrature of the path.
std::map<int, double> path_averages(const PathRealization& path, const AverageKernel& u, int first, int last,
                                    const quad::Options& opt = {});

// X_N(t) = Σ_{|n|≤N} averages[n] s̃(t - n)
double ase_reconstruct_path(const std::map<int, double>& averages, const ReconstructionKernel& kernel, double t,
                            int N);

// 4 R0 C_p(t)² / ((p-1)² N^{2(p-1)})
double mse_truncation_bound(double R0, const DecayBound& decay, int N);

// Σ of atom masses with |λ| > π (atoms at ±π are in band).
double aliasing_error(const SpectralMeasure& m);

struct ErrorReport {
  std::string experiment;
  int N = 0;
  int trials = 0;
  double mse = 0.0;
  double stderr_ = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  std::optional<double> slope;  // log-log slope across a sweep
  double allowance = 0.0;       // truncation allowance (aliasing only)
  double exact = 0.0;           // E|error|² from the atoms, no sampling noise
  double bias = 0.0;            // Monte Carlo mean of the error
  double bias_stderr = 0.0;
};

struct TruncationExperiment {
  std::shared_ptr<const SpectralMeasure> model;
  std::shared_ptr<const ReconstructionKernel> kernel;
  double t = 0.0;
  std::vector<int> Ns;
  int trials = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Monte Carlo E|X(t) - X_N(t)|² for every N (same paths for all N), the
// bound for each N (needs a windowed kernel), satisfied ⇔ mse - 3 se ≤ bound,
// and the least-squares slope of log mse on log N written into every row.
std::vector<ErrorReport> empirical_mse(const TruncationExperiment& exp);

// Across increasing N: mse_{k+1} ≤ mse_k + 3 √(se_k² + se_{k+1}²).
bool mse_non_increasing(const std::vector<ErrorReport>& sweep);

// Least-squares slope of log y on log x; nullopt when fewer than two points
// or some y ≤ 0.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct AliasingExperiment {
  std::shared_ptr<const SpectralMeasure> model;
  std::shared_ptr<const ReconstructionKernel> kernel;  // no window
  double t = 0.0;
  int N = 200;
  int trials = 2000;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Monte Carlo E|X(t) - P̃X(t)|², P̃X(t) = Σ_{|n|≤N} ⟨X, Pu(· - n)⟩ s(t - n).
// bound = aliasing_error(model); allowance = exact in-band truncation MSE;
// satisfied ⇔ |mse - bound| ≤ 3 se + allowance.
ErrorReport empirical_aliasing(const AliasingExperiment& exp);

// Largest |X(t) - X_N(t)| over the grid for one path.
double pathwise_max_error(const SpectralMeasure& model, const PathRealization& path,
                          const ReconstructionKernel& kernel, const std::vector<double>& ts, int N);

}  // namespace avgsamp
