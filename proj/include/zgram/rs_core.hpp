#pragma once

#include <stdexcept>

namespace zgram {

/// Thrown when an argument lies outside the region where the asymptotic
/// formulas are used (t below the floor, reversed intervals, bad offsets).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Truncation and solver policy shared by every evaluator.
///
/// correction_order counts the Riemann-Siegel remainder terms C_0, C_1, ...
/// added to the main sum: 0 is the bare main sum, 1 adds the leading C_0
/// term, and 2..5 add C_1..C_4 in turn.
struct RSConfig {
  static constexpr int kMaxCorrectionOrder = 5;

  double min_t = 50.0;
  int correction_order = 1;
  double newton_tol = 1e-10;
  int quad_order = 16;

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;
};

struct PhaseValue {
  double theta;        // radians
  double theta_prime;  // radians per unit t
};

/// Riemann-Siegel theta function and its derivative from the asymptotic
/// series (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760t^3).
PhaseValue theta(double t, const RSConfig& cfg = {});

/// Same series evaluated in extended precision.  The node solver needs this
/// because theta(t) grows like t ln t and a double loses the low digits of
/// the phase residual long before t ~ 1e8.
long double theta_extended(double t);

/// Hardy's Z function via the Riemann-Siegel main sum plus
/// cfg.correction_order remainder terms.
double z(double t, const RSConfig& cfg = {});

/// Z'(t) = -2 sum_{n <= rho} n^{-1/2} ln(rho/n) sin(theta(t) - t ln n),
/// rho = sqrt(t/2pi), plus the t-derivative of whichever remainder terms
/// z() includes, so that z_prime is the derivative of z away from the
/// points where floor(rho) jumps.  With correction_order = 0 this is the
/// bare main sum.
double z_prime(double t, const RSConfig& cfg = {});

enum class Integrand { Z, ZPrime };

/// Composite Gauss-Legendre integral of Z or Z' over a short interval
/// [a, b] with b - a <= 10.  Panel count is ceil((b-a) ln(b/2pi)) + 1.
double integrate(Integrand f, double a, double b, const RSConfig& cfg = {});

/// Remainder coefficient C_k(p), k = 0..4, p in [0, 1].
double rs_coefficient(int k, double p);
/// dC_k/dp.
double rs_coefficient_derivative(int k, double p);

}  // namespace zgram
