#pragma once

#include <cstddef>
#include <vector>

namespace zgram {

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Integral of f over [a, b] split into `panels` equal panels.
  template <class F>
  double integrate(F&& f, double a, double b, std::size_t panels) const {
    const double width = (b - a) / static_cast<double>(panels);
    const double half = 0.5 * width;
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double mid = a + (static_cast<double>(p) + 0.5) * width;
      double panel = 0.0;
      for (std::size_t i = 0; i < nodes_.size(); ++i)
        panel += weights_[i] * f(mid + half * nodes_[i]);
      total += half * panel;
    }
    return total;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace zgram
