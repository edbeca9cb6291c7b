#pragma once

// Discrete-atom spectral measures of real wide-sense-stationary processes,
// their autocovariance and seeded Gaussian sample paths.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace avgsamp {

struct SpectralAtom {
  double frequency;  // rad/s
  double mass;       // power carried by the atom, >= 0
};

/// dF as a finite set of atoms, symmetric about zero so the process is real.
///
/// Atoms are kept sorted by frequency. The mirror of an atom (λ, m) is matched
/// against (-λ, m) to a relative 1e-12. A measure with zero total mass is
/// accepted and describes the zero process.
class SpectralMeasure {
 public:
  SpectralMeasure(std::vector<SpectralAtom> atoms, double band_edge);

  const std::vector<SpectralAtom>& atoms() const { return atoms_; }
  double band_edge() const { return band_edge_; }
  // R_X(0)
  double total_mass() const;

  SpectralMeasure scaled(double factor) const;

 private:
  std::vector<SpectralAtom> atoms_;
  double band_edge_;
};

// R_X(t) = Σ_j m_j cos(λ_j t)
double autocovariance(const SpectralMeasure& m, double t);

// Every atom satisfies |λ_j| <= edge (closed band).
bool is_bandlimited(const SpectralMeasure& m, double edge);

// n_atoms equal masses at the midpoints of a uniform partition of
// [-edge, edge]; R_X(t) ≈ total_power · sinc(edge t / π).
SpectralMeasure flat_band_measure(double edge, double total_power, int n_atoms);

// splitmix64 finaliser applied to seed + (trial + 1) · golden-ratio increment.
// Used for every per-trial seed so results do not depend on scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// One realisation X(t) = Σ_j a_j cos(λ_j t) + b_j sin(λ_j t) over λ_j >= 0.
///
/// For a positive-frequency atom with mass m the amplitudes are
/// √(2m)·(ξ, η) with ξ, η independent standard normals; the zero-frequency
/// atom contributes √m·ξ₀. The ensemble then has autocovariance exactly
/// Σ m_j cos(λ_j t).
///
/// Draws come from std::mt19937_64 seeded with the path seed, feeding
/// std::normal_distribution: zero atom first, then (ξ, η) per positive atom in
/// increasing frequency.
class PathRealization {
 public:
  PathRealization() = default;
  PathRealization(std::vector<double> frequencies, std::vector<double> cos_amp, std::vector<double> sin_amp,
                  std::uint64_t seed);

  double operator()(double t) const;

  const std::vector<double>& frequencies() const { return freq_; }
  const std::vector<double>& cos_amplitudes() const { return cos_amp_; }
  const std::vector<double>& sin_amplitudes() const { return sin_amp_; }
  std::uint64_t seed() const { return seed_; }

  PathRealization& operator+=(const PathRealization& other);

 private:
  std::vector<double> freq_;
  std::vector<double> cos_amp_;
  std::vector<double> sin_amp_;
  std::uint64_t seed_ = 0;
};

// Nonnegative frequencies and their standard deviations √(2m) (√m at zero).
struct OneSidedSpectrum {
  std::vector<double> frequencies;
  std::vector<double> sigmas;
};
OneSidedSpectrum one_sided(const SpectralMeasure& m);

PathRealization realize(const SpectralMeasure& m, std::uint64_t seed);

struct SamplePath {
  std::vector<double> times;
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::shared_ptr<const SpectralMeasure> model;
};

SamplePath synthesize_path(std::shared_ptr<const SpectralMeasure> model, std::uint64_t seed,
                           std::vector<double> times);

}  // namespace avgsamp
