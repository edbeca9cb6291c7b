#include "avgsamp/quadrature.hpp"

#include <algorithm>

namespace avgsamp::quad {

std::vector<double> make_breaks(double a, double b, std::vector<double> interior) {
  std::vector<double> out;
  out.reserve(interior.size() + 2);
  out.push_back(a);
  std::sort(interior.begin(), interior.end());
  for (double x : interior)
    if (x > a && x < b && x > out.back()) out.push_back(x);
  out.push_back(b);
  return out;
}

Rule composite_rule(std::span<const double> breaks, int panels) {
  Rule r;
  const auto& nodes = detail::gl20();
  r.x.reserve((breaks.size() - 1) * panels * nodes.size());
  r.w.reserve(r.x.capacity());
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double h = (breaks[p + 1] - breaks[p]) / panels;
    for (int k = 0; k < panels; ++k) {
      const double mid = breaks[p] + (k + 0.5) * h;
      for (const auto& n : nodes) {
        r.x.push_back(mid + 0.5 * h * n.x);
        r.w.push_back(0.5 * h * n.w);
      }
    }
  }
  return r;
}

}  // namespace avgsamp::quad
