#pragma once

#include <vector>

namespace zkd::lab {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule (Newton on P_n, Golub-Welsch not needed at
// these sizes).
const GaussRule& GaussLegendre(int n);

// Composite rule on [a, b] with `panels` equal panels: calls fn(x, w) for every
// node x with its weight w.
template <typename Fn>
void CompositeGauss(double a, double b, int panels, int order, Fn&& fn) {
  const GaussRule& rule = GaussLegendre(order);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      fn(mid + half * rule.nodes[i], half * rule.weights[i]);
    }
  }
}

}  // namespace zkd::lab
