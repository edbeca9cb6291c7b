#include "avgsamp/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "avgsamp/errors.hpp"

namespace avgsamp {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr int kMaxDerivative = 24;
constexpr int kMaxPoly = kMaxDerivative + 3;

// One term of a kernel piece: Q(x) e^{iμx}, x = (t - α)/L in [0, 1].
struct Term {
  std::array<double, 2> q{};  // linear in x at most
  int degree = 0;
  double mu = 0.0;
};

struct Piece {
  double alpha = 0.0;
  double length = 0.0;
  std::array<Term, 3> terms{};
  int n_terms = 0;
};

struct PieceList {
  std::array<Piece, 2> pieces{};
  int size = 0;
  void add(const Piece& p) { pieces[size++] = p; }
};

PieceList pieces_of(Profile profile, double c, double a, double b) {
  PieceList out;
  switch (profile) {
    case Profile::Box: {
      Piece p{c - a, a + b, {}, 1};
      p.terms[0] = Term{{1.0 / (a + b), 0.0}, 0, 0.0};
      out.add(p);
      break;
    }
    case Profile::Triangle: {
      const double h = 2.0 / (a + b);
      if (a > 0) {
        Piece p{c - a, a, {}, 1};
        p.terms[0] = Term{{0.0, h}, 1, 0.0};
        out.add(p);
      }
      if (b > 0) {
        Piece p{c, b, {}, 1};
        p.terms[0] = Term{{h, -h}, 1, 0.0};
        out.add(p);
      }
      break;
    }
    case Profile::RaisedCosine: {
      const double h = 1.0 / (a + b);
      if (a > 0) {
        // h (1 - cos πx)
        Piece p{c - a, a, {}, 3};
        p.terms[0] = Term{{h, 0.0}, 0, 0.0};
        p.terms[1] = Term{{-0.5 * h, 0.0}, 0, kPi};
        p.terms[2] = Term{{-0.5 * h, 0.0}, 0, -kPi};
        out.add(p);
      }
      if (b > 0) {
        // h (1 + cos πx)
        Piece p{c, b, {}, 3};
        p.terms[0] = Term{{h, 0.0}, 0, 0.0};
        p.terms[1] = Term{{0.5 * h, 0.0}, 0, kPi};
        p.terms[2] = Term{{0.5 * h, 0.0}, 0, -kPi};
        out.add(p);
      }
      break;
    }
  }
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

namespace detail {

std::complex<double> monomial_exp_integral(int m, double z) {
  const cplx iz{0.0, z};
  const cplx phase = std::exp(-iz);
  if (std::abs(z) <= m + 1.0) {
    // e^{-iz} Σ_j (iz)^j m!/(m+j+1)!; term magnitudes decrease monotonically
    // because |z| < m + j + 2.
    cplx term = 1.0 / (m + 1.0);
    cplx sum = term;
    for (int j = 0; j < 200; ++j) {
      term *= iz / (m + j + 2.0);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return phase * sum;
  }
  // Upward recurrence E_k = (k E_{k-1} - e^{-iz}) / (iz); stable for |z| > k.
  cplx e = (1.0 - phase) / iz;
  for (int k = 1; k <= m; ++k) e = (static_cast<double>(k) * e - phase) / iz;
  return e;
}

}  // namespace detail

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Box:
      return "box";
    case Profile::Triangle:
      return "triangle";
    case Profile::RaisedCosine:
      return "raised_cosine";
  }
  return "box";
}

Profile profile_from_string(std::string_view name) {
  if (name == "box") return Profile::Box;
  if (name == "triangle") return Profile::Triangle;
  if (name == "raised_cosine") return Profile::RaisedCosine;
  throw InvalidArgument("profile must be one of box, triangle, raised_cosine (got '" + std::string(name) +
                        "')");
}

AverageKernel::AverageKernel(Profile profile, double center, double left_radius, double right_radius)
    : profile_(profile), center_(center), a_(left_radius), b_(right_radius) {
  if (!std::isfinite(center)) throw InvalidArgument("kernel center must be finite");
  if (!(left_radius >= 0.0) || !std::isfinite(left_radius))
    throw InvalidArgument("kernel left radius a must be >= 0 (got " + std::to_string(left_radius) + ")");
  if (!(right_radius >= 0.0) || !std::isfinite(right_radius))
    throw InvalidArgument("kernel right radius b must be >= 0 (got " + std::to_string(right_radius) + ")");
  if (!(left_radius + right_radius > 0.0)) throw InvalidArgument("kernel support must satisfy a + b > 0");
}

double AverageKernel::operator()(double t) const {
  if (t < support_lo() || t > support_hi()) return 0.0;
  const double s = t - center_;
  switch (profile_) {
    case Profile::Box:
      return 1.0 / (a_ + b_);
    case Profile::Triangle: {
      const double h = 2.0 / (a_ + b_);
      if (s < 0) return h * (1.0 + s / a_);
      if (b_ == 0.0) return h;
      return h * (1.0 - s / b_);
    }
    case Profile::RaisedCosine: {
      const double h = 1.0 / (a_ + b_);
      if (s < 0) return h * (1.0 + std::cos(kPi * s / a_));
      if (b_ == 0.0) return 2.0 * h;
      return h * (1.0 + std::cos(kPi * s / b_));
    }
  }
  return 0.0;
}

std::complex<double> AverageKernel::fourier(double xi) const { return fourier_derivative(xi, 0); }

std::complex<double> AverageKernel::fourier_derivative(double xi, int order) const {
  if (order < 0 || order > kMaxDerivative)
    throw InvalidArgument("fourier_derivative: order must be in [0, " + std::to_string(kMaxDerivative) + "]");

  const PieceList list = pieces_of(profile_, center_, a_, b_);
  // (-i)^order
  static constexpr std::array<cplx, 4> kMinusIPow{cplx{1, 0}, cplx{0, -1}, cplx{-1, 0}, cplx{0, 1}};
  const cplx sign = kMinusIPow[order % 4];

  cplx total{0.0, 0.0};
  for (int pi = 0; pi < list.size; ++pi) {
    const Piece& piece = list.pieces[pi];
    const double alpha = piece.alpha;
    const double len = piece.length;

    // (α + L x)^order expanded in powers of x.
    std::array<double, kMaxPoly> base{};
    for (int j = 0; j <= order; ++j)
      base[j] = binomial(order, j) * std::pow(alpha, order - j) * std::pow(len, j);

    cplx piece_sum{0.0, 0.0};
    for (int ti = 0; ti < piece.n_terms; ++ti) {
      const Term& term = piece.terms[ti];
      const double z = xi * len - term.mu;
      for (int m = 0; m <= order + term.degree; ++m) {
        double coef = 0.0;
        for (int d = 0; d <= term.degree; ++d) {
          const int j = m - d;
          if (j >= 0 && j <= order) coef += term.q[d] * base[j];
        }
        if (coef != 0.0) piece_sum += coef * detail::monomial_exp_integral(m, z);
      }
    }
    total += len * std::exp(cplx{0.0, -xi * alpha}) * piece_sum;
  }
  return sign * total;
}

std::vector<double> AverageKernel::breakpoints() const {
  std::vector<double> out{support_lo()};
  if (center_ > support_lo() && center_ < support_hi()) out.push_back(center_);
  out.push_back(support_hi());
  return out;
}

FrameBounds frame_bounds_shift_invariant(const AverageKernel& generator, int grid_resolution) {
  if (grid_resolution < 2) throw InvalidArgument("frame bounds grid resolution must be >= 2");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  const double step = 2.0 * kPi / (grid_resolution - 1);
  for (int j = 0; j < grid_resolution; ++j) {
    const double xi = j + 1 == grid_resolution ? kPi : -kPi + j * step;
    const double m = std::abs(generator.fourier(xi));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  hi = std::max(hi, std::abs(generator.fourier(0.0)));
  if (lo < kRieszThreshold)
    throw NotRieszBasis("|u^(xi)| reaches " + std::to_string(lo) +
                        " on [-pi, pi]; translates of this kernel do not form a Riesz basis");
  return {lo, hi};
}

SamplingScheme::SamplingScheme(std::vector<AverageKernel> kernels, Regime regime)
    : kernels_(std::move(kernels)), regime_(regime) {
  if (kernels_.empty()) throw InvalidArgument("sampling scheme needs at least one kernel");
  centers_.reserve(kernels_.size());
  for (const auto& k : kernels_) centers_.push_back(k.center());
  for (std::size_t i = 1; i < centers_.size(); ++i)
    if (!(centers_[i] > centers_[i - 1]))
      throw InvalidArgument("sampling centers must be strictly increasing");

  if (regime_ == Regime::Oversampled) {
    for (const auto& k : kernels_)
      if (!k.is_symmetric())
        throw InvalidArgument("oversampled regime requires symmetric kernels (a == b)");
  } else {
    const double first = centers_.front();
    if (first != std::round(first)) throw InvalidArgument("Nyquist regime requires integer centers");
    for (std::size_t i = 0; i < kernels_.size(); ++i) {
      if (centers_[i] != first + static_cast<double>(i))
        throw InvalidArgument("Nyquist regime requires consecutive integer centers");
      if (!kernels_[i].same_shape(kernels_.front()))
        throw InvalidArgument("Nyquist regime requires integer translates of a single generator");
    }
  }
}

SamplingScheme SamplingScheme::translates(const AverageKernel& shape, const std::vector<double>& centers,
                                          Regime regime) {
  std::vector<AverageKernel> ks;
  ks.reserve(centers.size());
  for (double c : centers) ks.push_back(AverageKernel(shape.profile(), c, shape.left_radius(), shape.right_radius()));
  return SamplingScheme(std::move(ks), regime);
}

SamplingScheme SamplingScheme::uniform(const AverageKernel& shape, double lo, double hi, double gap) {
  if (!(gap > 0.0)) throw InvalidArgument("center gap must be > 0");
  if (!(hi >= lo)) throw InvalidArgument("uniform scheme needs hi >= lo");
  std::vector<double> centers;
  const auto count = static_cast<long>(std::floor((hi - lo) / gap + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) centers.push_back(lo + static_cast<double>(i) * gap);
  return translates(shape, centers, Regime::Oversampled);
}

SamplingScheme SamplingScheme::nyquist(const AverageKernel& generator, int first, int last) {
  if (last < first) throw InvalidArgument("Nyquist scheme needs last >= first");
  std::vector<double> centers;
  for (int n = first; n <= last; ++n) centers.push_back(generator.center() + n);
  std::vector<AverageKernel> ks;
  for (double c : centers)
    ks.push_back(AverageKernel(generator.profile(), c, generator.left_radius(), generator.right_radius()));
  return SamplingScheme(std::move(ks), Regime::NyquistShiftInvariant);
}

double SamplingScheme::support_delta() const {
  double r = 0.0;
  for (const auto& k : kernels_) r = std::max(r, k.delta());
  return 2.0 * r;
}

double SamplingScheme::max_gap() const {
  double g = 0.0;
  for (std::size_t i = 1; i < centers_.size(); ++i) g = std::max(g, centers_[i] - centers_[i - 1]);
  return g;
}

double oversampled_threshold(double omega) {
  if (!(omega > 0.0)) throw InvalidArgument("bandwidth omega must be > 0");
  return 1.0 / (std::numbers::sqrt2 * kPi * omega);
}

bool check_oversampled_condition(const SamplingScheme& scheme, double omega) {
  const double delta = std::max(scheme.max_gap(), scheme.support_delta());
  return delta < oversampled_threshold(omega);
}

bool check_nyquist_condition(double a, double b) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(a + b > 0.0))
    throw InvalidArgument("Nyquist condition needs a, b >= 0 and a + b > 0");
  const double delta = std::max(a, b);
  return std::sqrt(delta * (a + b)) < 1.0 / kPi;
}

}  // namespace avgsamp
