#include "avgsamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "avgsamp/errors.hpp"

namespace avgsamp {

namespace {

bool close_rel(double x, double y) {
  return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

SpectralMeasure::SpectralMeasure(std::vector<SpectralAtom> atoms, double band_edge)
    : atoms_(std::move(atoms)), band_edge_(band_edge) {
  if (!(band_edge > 0.0) || !std::isfinite(band_edge)) throw InvalidArgument("band_edge must be > 0");
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.frequency)) throw InvalidArgument("atom frequencies must be finite");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw InvalidArgument("atom masses must be >= 0");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const SpectralAtom& x, const SpectralAtom& y) { return x.frequency < y.frequency; });
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].frequency == atoms_[i - 1].frequency)
      throw InvalidArgument("atom frequencies must be distinct");
  const std::size_t n = atoms_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& lhs = atoms_[i];
    const auto& rhs = atoms_[n - 1 - i];
    if (!close_rel(lhs.frequency, -rhs.frequency) || !close_rel(lhs.mass, rhs.mass))
      throw InvalidArgument("spectral measure must be symmetric: atom at " + std::to_string(lhs.frequency) +
                            " has no mirror of equal mass");
  }
}

double SpectralMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

SpectralMeasure SpectralMeasure::scaled(double factor) const {
  if (!(factor >= 0.0)) throw InvalidArgument("spectral scale factor must be >= 0");
  auto atoms = atoms_;
  for (auto& a : atoms) a.mass *= factor;
  return SpectralMeasure(std::move(atoms), band_edge_);
}

double autocovariance(const SpectralMeasure& m, double t) {
  double acc = 0.0;
  for (const auto& a : m.atoms()) acc += a.mass * std::cos(a.frequency * t);
  return acc;
}

bool is_bandlimited(const SpectralMeasure& m, double edge) {
  return std::all_of(m.atoms().begin(), m.atoms().end(),
                     [edge](const SpectralAtom& a) { return std::abs(a.frequency) <= edge; });
}

SpectralMeasure flat_band_measure(double edge, double total_power, int n_atoms) {
  if (!(edge > 0.0)) throw InvalidArgument("flat band edge must be > 0");
  if (!(total_power > 0.0)) throw InvalidArgument("flat band total power must be > 0");
  if (n_atoms < 2 || n_atoms % 2 != 0) throw InvalidArgument("flat band atom count must be even and >= 2");
  const int half = n_atoms / 2;
  const double cell = 2.0 * edge / n_atoms;
  const double mass = total_power / n_atoms;
  std::vector<SpectralAtom> atoms;
  atoms.reserve(n_atoms);
  // Positive midpoints (k + 1/2)·cell, mirrored exactly.
  for (int k = half - 1; k >= 0; --k) atoms.push_back({-(k + 0.5) * cell, mass});
  for (int k = 0; k < half; ++k) atoms.push_back({(k + 0.5) * cell, mass});
  return SpectralMeasure(std::move(atoms), edge);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + (trial + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PathRealization::PathRealization(std::vector<double> frequencies, std::vector<double> cos_amp,
                                 std::vector<double> sin_amp, std::uint64_t seed)
    : freq_(std::move(frequencies)), cos_amp_(std::move(cos_amp)), sin_amp_(std::move(sin_amp)), seed_(seed) {
  if (freq_.size() != cos_amp_.size() || freq_.size() != sin_amp_.size())
    throw InvalidArgument("path realisation arrays must have equal length");
}

double PathRealization::operator()(double t) const {
  double acc = 0.0;
  for (std::size_t j = 0; j < freq_.size(); ++j) {
    const double arg = freq_[j] * t;
    acc += cos_amp_[j] * std::cos(arg) + sin_amp_[j] * std::sin(arg);
  }
  return acc;
}

PathRealization& PathRealization::operator+=(const PathRealization& other) {
  if (freq_ != other.freq_) throw InvalidArgument("can only add realisations of the same model");
  for (std::size_t j = 0; j < freq_.size(); ++j) {
    cos_amp_[j] += other.cos_amp_[j];
    sin_amp_[j] += other.sin_amp_[j];
  }
  return *this;
}

OneSidedSpectrum one_sided(const SpectralMeasure& m) {
  OneSidedSpectrum out;
  for (const auto& a : m.atoms()) {
    if (a.frequency < 0.0) continue;
    out.frequencies.push_back(a.frequency);
    out.sigmas.push_back(a.frequency == 0.0 ? std::sqrt(a.mass) : std::sqrt(2.0 * a.mass));
  }
  return out;
}

PathRealization realize(const SpectralMeasure& m, std::uint64_t seed) {
  const OneSidedSpectrum spec = one_sided(m);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t n = spec.frequencies.size();
  std::vector<double> ca(n), sa(n);
  for (std::size_t j = 0; j < n; ++j) {
    ca[j] = spec.sigmas[j] * normal(gen);
    if (spec.frequencies[j] != 0.0) sa[j] = spec.sigmas[j] * normal(gen);
  }
  return PathRealization(spec.frequencies, std::move(ca), std::move(sa), seed);
}

SamplePath synthesize_path(std::shared_ptr<const SpectralMeasure> model, std::uint64_t seed,
                           std::vector<double> times) {
  if (!model) throw InvalidArgument("synthesize_path needs a model");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvalidArgument("path time grid must be increasing");
  const PathRealization path = realize(*model, seed);
  SamplePath out;
  out.values.reserve(times.size());
  for (double t : times) out.values.push_back(path(t));
  out.times = std::move(times);
  out.seed = seed;
  out.model = std::move(model);
  return out;
}

}  // namespace avgsamp
