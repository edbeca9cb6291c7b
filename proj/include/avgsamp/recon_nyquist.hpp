#pragma once

// Nyquist-rate reconstruction from shift-invariant averages ⟨f, u(· - n)⟩:
// the dual spectrum θ/conj(û), its time-domain tabulation, the decay constant
// C_p(t) and truncated reconstruction sums.

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "avgsamp/kernels.hpp"
#include "avgsamp/pw_core.hpp"
#include "avgsamp/quadrature.hpp"

namespace avgsamp {

/// θ(ξ): 1 on [-ω, ω], 0 outside (-π, π), and the order-p smoothstep
/// S_p((π - |ξ|)/(π - ω)) in between, so θ ∈ C^p(R).
struct GuardBandWindow {
  double omega;
  int p;

  GuardBandWindow(double inner_edge, int smoothness);
};

inline constexpr int kMaxWindowSmoothness = 20;

// θ^{(d)}(ξ). Throws DerivativeOrderExceeded when d > p.
double window_eval(const GuardBandWindow& w, double xi, int d = 0);

// S_p^{(d)}(x) on [0, 1].
double smoothstep(int p, double x, int d = 0);

struct TabulationSpec {
  double half_range = 70.0;   // table covers [-half_range, half_range]
  double step = 1.0 / 64.0;   // node spacing
};

/// s̃(t) = (1/2π) ∫_{-π}^{π} θ(ξ)/conj(û(ξ)) e^{itξ} dξ, tabulated.
///
/// For real u, û(-ξ) = conj(û(ξ)), so the spectrum is Hermitian and s̃ is
/// real for every profile, symmetric or not. Values between nodes come from a
/// cubic B-spline with quadrature endpoint slopes.
class ReconstructionKernel {
 public:
  ReconstructionKernel(AverageKernel generator, std::optional<GuardBandWindow> window, TabulationSpec spec);

  const AverageKernel& generator() const { return generator_; }
  const std::optional<GuardBandWindow>& window() const { return window_; }
  const FrameBounds& frame_bounds() const { return bounds_; }
  double half_range() const { return spec_.half_range; }
  double step() const { return spec_.step; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

  // θ(ξ)/conj(û(ξ)) on [-π, π], zero outside.
  std::complex<double> spectrum(double xi) const;

  // Spline value; throws TabulationRangeExceeded outside the table.
  double operator()(double t) const;
  bool covers(double t) const;

  // Inverse Fourier integral at t by adaptive quadrature (no table).
  double direct(double t, const quad::Options& opt = {}) const;

 private:
  AverageKernel generator_;
  std::optional<GuardBandWindow> window_;
  TabulationSpec spec_;
  FrameBounds bounds_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

// Validates the Riesz bounds of u (NotRieszBasis otherwise) and tabulates.
ReconstructionKernel build_kernel(const AverageKernel& u, std::optional<GuardBandWindow> window,
                                  TabulationSpec spec = {});

struct DecayBound {
  int p;
  double t;
  double C;
};

// Options used for the C_p(t) integral; the |·| of a complex derivative is
// only piecewise smooth, so the default tolerance is looser than quad's.
inline constexpr quad::Options kDecayQuadOptions{1e-10, 18};

// C_p(t) = (1/2π) ∫_{-π}^{π} |(θ(ξ) e^{-itξ} / û(ξ))^{(p)}| dξ. The p-th
// derivative is expanded by the Leibniz rule over the three factors, with
// (1/û)^{(k)} from Faà di Bruno over the closed-form û^{(j)}.
DecayBound decay_constant(const AverageKernel& u, const GuardBandWindow& w, double t,
                          const quad::Options& opt = kDecayQuadOptions);

// (1/û)^{(k)}(ξ) for k = 0 .. order.
std::vector<std::complex<double>> reciprocal_derivatives(const AverageKernel& u, double xi, int order);

// (θ(ξ) e^{-itξ} / û(ξ))^{(p)}
std::complex<double> decay_integrand(const AverageKernel& u, const GuardBandWindow& w, double t, double xi);

// ⟨f, u(· - n)⟩ for n = first .. last.
std::map<int, double> nyquist_averages(const PWFunction& f, const AverageKernel& u, int first, int last,
                                       const quad::Options& opt = {});

// Σ_{|n| ≤ N} averages[n] s̃(t - n). Throws TabulationRangeExceeded when t ± N
// leaves the table and InvalidArgument when an average in range is missing.
double reconstruct(const std::map<int, double>& averages, const ReconstructionKernel& kernel, double t, int N);

// 2 C_p(t) N^{1-p} / (p - 1): bound on the tail Σ_{|n|>N} |s̃(t - n)| for
// unit-bounded averages.
double tail_bound(const DecayBound& d, int N);

}  // namespace avgsamp
