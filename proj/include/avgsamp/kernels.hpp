#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace avgsamp {

enum class Profile { Box, Triangle, RaisedCosine };

std::string_view to_string(Profile p);
// Accepts "box", "triangle", "raised_cosine". Throws InvalidArgument otherwise.
Profile profile_from_string(std::string_view name);

/// Nonnegative, unit-mass averaging profile supported on [center - a, center + b].
///
/// Box is flat; Triangle peaks at the center and falls linearly to zero at
/// both ends; RaisedCosine is a half cosine bell on each side of the center.
/// Each side is scaled so the total mass is exactly one, which lets a and b
/// differ (one-sided averages are allowed with a = 0 or b = 0).
class AverageKernel {
 public:
  AverageKernel(Profile profile, double center, double left_radius, double right_radius);

  static AverageKernel symmetric(Profile profile, double center, double width) {
    return AverageKernel(profile, center, 0.5 * width, 0.5 * width);
  }

  Profile profile() const { return profile_; }
  double center() const { return center_; }
  double left_radius() const { return a_; }
  double right_radius() const { return b_; }
  double width() const { return a_ + b_; }
  // max{a, b}
  double delta() const { return a_ > b_ ? a_ : b_; }
  double support_lo() const { return center_ - a_; }
  double support_hi() const { return center_ + b_; }
  bool is_symmetric() const { return a_ == b_; }

  double operator()(double t) const;

  // û(ξ) = ∫ u(t) e^{-itξ} dt, evaluated in closed form.
  std::complex<double> fourier(double xi) const;
  // d^k/dξ^k û(ξ) = ∫ (-it)^k u(t) e^{-itξ} dt, also closed form.
  std::complex<double> fourier_derivative(double xi, int order) const;

  AverageKernel translated(double shift) const {
    return AverageKernel(profile_, center_ + shift, a_, b_);
  }
  // Support ends plus the center (where the piecewise formula changes).
  std::vector<double> breakpoints() const;
  // Same profile and radii, ignoring the center.
  bool same_shape(const AverageKernel& other) const {
    return profile_ == other.profile_ && a_ == other.a_ && b_ == other.b_;
  }

 private:
  Profile profile_;
  double center_;
  double a_;
  double b_;
};

inline double eval_kernel(const AverageKernel& k, double t) { return k(t); }
inline std::complex<double> kernel_fourier(const AverageKernel& k, double xi) { return k.fourier(xi); }

struct FrameBounds {
  double lower;
  double upper;
};

// Grid estimate of ess inf / ess sup of |û| on [-π, π]. The grid has
// `grid_resolution` equispaced points including both endpoints; for the
// built-in profiles |û| is continuous so the estimate converges as the grid
// is refined. Throws NotRieszBasis when the lower bound is below 1e-10.
FrameBounds frame_bounds_shift_invariant(const AverageKernel& generator, int grid_resolution = 16384);

inline constexpr double kRieszThreshold = 1e-10;

enum class Regime { Oversampled, NyquistShiftInvariant };

// Centers t_n with one averaging kernel per center.
//
// Oversampled: arbitrary strictly increasing centers, symmetric kernels
// (a == b), possibly different per index.
// NyquistShiftInvariant: consecutive integer centers, all kernels integer
// translates of one generator.
class SamplingScheme {
 public:
  SamplingScheme(std::vector<AverageKernel> kernels, Regime regime);

  // Kernels with the shape of `shape` placed at each of `centers`.
  static SamplingScheme translates(const AverageKernel& shape, const std::vector<double>& centers,
                                   Regime regime);
  // Equispaced centers lo, lo + gap, ... up to hi (inclusive within 1e-9·gap).
  static SamplingScheme uniform(const AverageKernel& shape, double lo, double hi, double gap);
  // u(t - n) for n = first .. last.
  static SamplingScheme nyquist(const AverageKernel& generator, int first, int last);

  Regime regime() const { return regime_; }
  std::size_t size() const { return kernels_.size(); }
  const std::vector<AverageKernel>& kernels() const { return kernels_; }
  const std::vector<double>& centers() const { return centers_; }
  // 2 · max radius, so every kernel fits in [t_n - δ/2, t_n + δ/2].
  double support_delta() const;
  double max_gap() const;

 private:
  std::vector<AverageKernel> kernels_;
  std::vector<double> centers_;
  Regime regime_;
};

// 1 / (√2 π ω)
double oversampled_threshold(double omega);

// True iff some δ satisfies gap ≤ δ for every consecutive pair, every kernel
// lies in [t_n - δ/2, t_n + δ/2], and δ < 1/(√2 π ω). The smallest such δ is
// max(max gap, support_delta()).
bool check_oversampled_condition(const SamplingScheme& scheme, double omega);

// √(max{a,b} · (a + b)) < 1/π
bool check_nyquist_condition(double a, double b);

namespace detail {
// ∫_0^1 x^m e^{-izx} dx for real z, stable for all z.
std::complex<double> monomial_exp_integral(int m, double z);
}  // namespace detail

}  // namespace avgsamp
