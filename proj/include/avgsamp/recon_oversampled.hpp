#pragma once

// Iterative reconstruction from local averages at irregular, dense centers:
// quasi-interpolation by a step function, projection onto PW_{πω}, and the
// fixed-point iteration f_{k+1} = f_k + A(averages) - A(averages of f_k).

#include <optional>
#include <vector>

#include "avgsamp/errors.hpp"
#include "avgsamp/kernels.hpp"
#include "avgsamp/pw_core.hpp"

namespace avgsamp {

/// Piecewise constant: values[i] on [edges[i], edges[i+1]).
struct StepFunction {
  std::vector<double> edges;
  std::vector<double> values;

  double operator()(double t) const;
  CompactFunction as_compact() const;
};

// averages[n] on the cell between the midpoints around center t_n. The outer
// cells extend half a gap beyond the first and last centers. Averages are
// indexed by kernel position in the scheme.
StepFunction quasi_interpolant(const std::vector<double>& averages, const SamplingScheme& scheme);

// Sinc indices n with n/ω in [t_first + margin, t_last - margin]; the whole
// span when it is shorter than 2·margin. Nodes near the data's edge are poorly
// determined and would set the contraction rate.
IndexRange default_index_range(const SamplingScheme& scheme, double omega, double margin = 0.0);

// A(averages) = P(quasi_interpolant(averages)) with coefficients on `range`.
PWFunction approx_operator(const std::vector<double>& averages, const SamplingScheme& scheme, double omega,
                           std::optional<IndexRange> range = std::nullopt);

// ⟨f, u_n⟩ for every kernel of the scheme.
std::vector<double> scheme_averages(const PWFunction& f, const SamplingScheme& scheme,
                                    const quad::Options& opt = {});

struct IterationOptions {
  double tol = 1e-10;
  int max_iter = 200;
  double margin = 10.0;         // data beyond the unknowns at each end
  double trusted_fraction = 0.8;  // inner part of what remains
  double grid_step = 1.0 / 32.0;
  std::optional<IndexRange> range;
  std::optional<PWFunction> initial;  // replaces f₀ = A(averages) when set
};

struct IterationState {
  PWFunction estimate{1.0};
  std::vector<double> residuals;  // ‖f_{k+1} - f_k‖ on the trusted grid
  double gamma = 0.0;             // last ratio of successive residuals
  double max_gamma = 0.0;         // largest ratio from the second step on
  int iterations = 0;
  bool converged = false;
  bool guarantee = false;  // check_oversampled_condition at the start
};

// Residuals grew three times in a row; carries the state at that point.
class Diverged : public Error {
 public:
  Diverged(const std::string& what, IterationState state) : Error(what), state_(std::move(state)) {}
  const IterationState& state() const { return state_; }

 private:
  IterationState state_;
};

// [lo, hi] over which residuals are measured.
std::pair<double, double> trusted_interval(const SamplingScheme& scheme, const IterationOptions& opt);

// Discrete L² norm √(h Σ f(t_i)²) on the grid lo, lo + h, ..., ≤ hi.
double grid_l2_norm(const PWFunction& f, double lo, double hi, double h);

IterationState iterate_reconstruct(const std::vector<double>& averages, const SamplingScheme& scheme, double omega,
                                   const IterationOptions& opt = {});

}  // namespace avgsamp
