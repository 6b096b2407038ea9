#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zgram/rs_core.hpp"

namespace zgram {

/// Thrown when the node solver fails to reach the requested phase.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shifted Gram point: the abscissa t with theta(t) = pi * nu + tau.
struct Node {
  std::int64_t nu;
  double tau;
  double t;
};

enum class Parity { All, Even, Odd };

/// Verification range [T, T + H].
struct Window {
  double T;
  double H;

  /// Throws std::invalid_argument unless T >= 1e3 and H > 0.
  void validate() const;
  /// True when H exceeds T^(1/6 + epsilon).  This is only a warning condition.
  bool exceeds_h1(double epsilon) const;
};

/// Finite union of disjoint open intervals, in increasing order.
struct SegmentSet {
  std::vector<std::pair<double, double>> segments;
  double measure = 0.0;
};

enum class SetKind { G1, G2 };

/// Principal branch of the Lambert W function for x >= 0.
double lambert_w0(double x);

/// Smallest admissible index: ceil(theta(min_t) / pi).
std::int64_t min_node_index(const RSConfig& cfg = {});

/// Solves theta(t) = pi * nu + tau by Newton's method on the extended
/// precision phase, with a bisection fallback.
Node solve_node(std::int64_t nu, double tau, const RSConfig& cfg = {});

/// theta(node.t) - (pi * nu + tau), evaluated in extended precision.
double phase_residual(const Node& node);

/// Nodes whose unshifted abscissa t_nu(0) lies in [T, T + H], filtered by the
/// parity of nu and solved at the requested tau.  Output is in ascending nu.
std::vector<Node> enumerate_nodes(const Window& w, double tau, Parity parity,
                                  const RSConfig& cfg = {}, int threads = 1);

/// G1 (even nu, half-width `offset` in phase) or G2 (odd nu) over the window.
SegmentSet build_set(SetKind kind, double offset, const Window& w, const RSConfig& cfg = {},
                     int threads = 1);

}  // namespace zgram
