#pragma once

// Band-limited functions as finite sinc series, local averages, orthogonal
// projection onto PW_{πω}, the point-sampling baseline and Zak transforms.

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "avgsamp/kernels.hpp"
#include "avgsamp/quadrature.hpp"

namespace avgsamp {

// sin(πx) / (πx), with sinc(0) = 1. Exact zeros at nonzero integers.
double sinc(double x);
// d/dx sinc(x)
double sinc_derivative(double x);

/// f(t) = Σ_n c_n sinc(ωt - n) with finitely many nonzero c_n.
///
/// Because sinc(ωt - n) vanishes at every other node m/ω, c_n = f(n/ω).
/// The translates are orthogonal with ‖sinc(ω· - n)‖² = 1/ω, so L² norms and
/// inner products reduce to coefficient sums.
class PWFunction {
 public:
  explicit PWFunction(double omega, std::map<int, double> coeffs = {});

  double omega() const { return omega_; }
  const std::map<int, double>& coefficients() const { return coeffs_; }
  double coefficient(int n) const;
  bool empty() const { return coeffs_.empty(); }

  double operator()(double t) const;

  // Exact L² norm and inner product (same ω required).
  double l2_norm() const;
  double inner(const PWFunction& other) const;

  PWFunction& operator+=(const PWFunction& other);
  PWFunction& operator-=(const PWFunction& other);
  PWFunction& operator*=(double s);

  // Drops coefficients with |c_n| < threshold.
  PWFunction& prune(double threshold);

 private:
  double omega_;
  std::map<int, double> coeffs_;
};

PWFunction operator+(PWFunction a, const PWFunction& b);
PWFunction operator-(PWFunction a, const PWFunction& b);
PWFunction operator*(double s, PWFunction a);

inline double eval_pw(const PWFunction& f, double t) { return f(t); }

// ⟨f, u⟩ = ∫ f(t) u(t) dt by refined Gauss–Legendre over the kernel support.
double local_average(const PWFunction& f, const AverageKernel& k, const quad::Options& opt = {});

/// Real function vanishing outside [lo, hi], smooth between break points.
struct CompactFunction {
  std::function<double(double)> f;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> breaks;  // sorted, includes lo and hi

  static CompactFunction from_kernel(const AverageKernel& k);
  // Linear interpolation of values on the grid t0, t0 + step, ...
  static CompactFunction from_table(double t0, double step, std::vector<double> values);
  // Piecewise constant: values[i] on [edges[i], edges[i+1]).
  static CompactFunction from_steps(std::vector<double> edges, std::vector<double> values);
};

struct IndexRange {
  int first = 0;
  int last = -1;
};

// Coefficients of the orthogonal projection P onto PW_{πω}:
//   c_n = (Pg)(n/ω) = (1/2π) ∫_{-πω}^{πω} ĝ(ξ) e^{i n ξ/ω} dξ = ω ∫ g(s) sinc(ωs - n) ds,
// the last form integrated by quadrature over the support of g. The default
// index range covers the support plus 32 nodes on each side. Coefficients
// below 1e-12 in magnitude are dropped.
PWFunction project_pw(const CompactFunction& g, double omega, std::optional<IndexRange> range = std::nullopt,
                      const quad::Options& opt = {});

// Projection of a sinc series onto PW_{πω'}, closed form; identity when ω' ≥ ω.
PWFunction project_pw(const PWFunction& f, double omega, IndexRange range);

// Σ_{|n| ≤ N} samples[n] sinc(ωt - n); missing samples count as zero.
double wsk_reconstruct(const std::map<int, double>& samples, double omega, double t, int N);

enum class ZakProfile { Sinc, SincDerivative };

// Partial sum Σ_{|n| ≤ M} f(t - n) e^{inξ}.
std::complex<double> zak_transform(ZakProfile profile, double t, double xi, int M);

// |Z_f(t, ξ)| for every (t, ξ) pair of the two grids, row-major in t.
std::vector<double> zak_magnitude_grid(ZakProfile profile, std::span<const double> ts,
                                       std::span<const double> xis, int M);

}  // namespace avgsamp
