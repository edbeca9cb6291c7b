#pragma once

// Gauss–Legendre quadrature with dyadic panel refinement.
//
// The nodes come from Boost.Math's 20-point table; the refinement driver and
// the composite rules are ours because every integrand in this library is a
// piecewise-smooth product with known break points (kernel corners, window
// junctions), and callers need to pass those in.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "avgsamp/errors.hpp"

namespace avgsamp::quad {

struct Options {
  double tol = 1e-12;   // stop when successive levels differ by less (relative to max(1,|I|))
  int max_levels = 20;  // QuadratureNotConverged past this many halvings
};

namespace detail {

struct Node {
  double x;
  double w;
};

// Nodes of the 20-point rule on [-1, 1], symmetric pairs expanded.
inline const std::array<Node, 20>& gl20() {
  static const std::array<Node, 20> nodes = [] {
    using G = boost::math::quadrature::gauss<double, 20>;
    std::array<Node, 20> out{};
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out[k++] = {-xs[i], ws[i]};
      out[k++] = {xs[i], ws[i]};
    }
    return out;
  }();
  return nodes;
}

template <class T>
double magnitude(const T& v) {
  using std::abs;
  return abs(v);
}

}  // namespace detail

template <class F>
auto gauss20(const F& f, double a, double b) {
  using R = std::decay_t<decltype(f(a))>;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  R acc{};
  for (const auto& n : detail::gl20()) acc += n.w * f(mid + half * n.x);
  return acc * half;
}

// Integrates f over [breaks.front(), breaks.back()], treating each interval
// between consecutive break points as one smooth piece. Level l uses 2^l
// equal panels per piece; returns once two successive levels agree.
template <class F>
auto integrate(const F& f, std::span<const double> breaks, const Options& opt = {}) {
  using R = std::decay_t<decltype(f(0.0))>;
  if (breaks.size() < 2) throw InvalidArgument("integrate: need at least two break points");

  auto level_sum = [&](int level) {
    const int panels = 1 << level;
    R acc{};
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
      const double lo = breaks[p];
      const double hi = breaks[p + 1];
      if (!(hi > lo)) continue;
      const double h = (hi - lo) / panels;
      for (int k = 0; k < panels; ++k) acc += gauss20(f, lo + k * h, k + 1 == panels ? hi : lo + (k + 1) * h);
    }
    return acc;
  };

  R prev = level_sum(0);
  for (int level = 1; level <= opt.max_levels; ++level) {
    R cur = level_sum(level);
    const double scale = std::max(1.0, detail::magnitude(cur));
    if (detail::magnitude(cur - prev) < opt.tol * scale) return cur;
    prev = cur;
  }
  throw QuadratureNotConverged("integrate: no convergence after " + std::to_string(opt.max_levels) +
                               " refinement levels");
}

template <class F>
auto integrate(const F& f, double a, double b, const Options& opt = {}) {
  const std::array<double, 2> br{a, b};
  return integrate(f, std::span<const double>(br), opt);
}

// Sorts, clips to [a, b] and deduplicates break points, always keeping a and b.
std::vector<double> make_breaks(double a, double b, std::vector<double> interior);

// Fixed composite rule: `panels` equal GL-20 panels on every piece.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

Rule composite_rule(std::span<const double> breaks, int panels);

}  // namespace avgsamp::quad
