#include "zgram/rs_core.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "zgram/quadrature.hpp"

namespace zgram {
namespace {

#include "rs_coefficients.inc"

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// Per-term data for the main sums: ln n, n^{-1/2}, and ln n / 2pi split into
// a double-double pair so that t ln n can be reduced modulo 2pi without
// losing the fractional digits at t ~ 1e8.  Covers rho(t) up to 2^16
// (t up to about 2.7e10); larger n are computed on the fly.
struct Term {
  double log_n;
  double inv_sqrt_n;
  double cycles_hi;
  double cycles_lo;
};

Term make_term(std::size_t n) {
  const long double cycles = std::log(static_cast<long double>(n)) / kTwoPiL;
  const auto hi = static_cast<double>(cycles);
  return {std::log(static_cast<double>(n)), 1.0 / std::sqrt(static_cast<double>(n)), hi,
          static_cast<double>(cycles - hi)};
}

struct TermTable {
  static constexpr std::size_t kSize = std::size_t{1} << 16;
  std::vector<Term> entries;

  TermTable() : entries(kSize + 1) {
    for (std::size_t n = 1; n <= kSize; ++n) entries[n] = make_term(n);
  }
};

inline Term term(std::size_t n) {
  static const TermTable table;
  return n <= TermTable::kSize ? table.entries[n] : make_term(n);
}

// theta(t) - t ln n reduced to a few radians.  t * cycles_hi is split with an
// fma into its rounded value and exact error before removing whole turns.
inline double phase(double t, double theta_reduced, const Term& e) {
  const double p = t * e.cycles_hi;
  const double err = std::fma(t, e.cycles_hi, -p);
  const double frac = (p - std::nearbyint(p)) + (err + t * e.cycles_lo);
  return theta_reduced - kTwoPi * frac;
}

void require_t(double t, const RSConfig& cfg, const char* what) {
  if (!(t >= cfg.min_t))
    throw DomainError(std::string(what) + ": t = " + std::to_string(t) + " is below min_t = " +
                      std::to_string(cfg.min_t));
}

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

template <std::size_t N>
double horner_derivative(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
  return acc;
}

// theta(t) reduced to [0, 2pi), still carrying the extended-precision digits.
double reduced_theta(double t) {
  long double th = std::fmod(theta_extended(t), kTwoPiL);
  if (th < 0) th += kTwoPiL;
  return static_cast<double>(th);
}

}  // namespace

void RSConfig::validate() const {
  if (!(min_t >= 50.0)) throw std::invalid_argument("RSConfig: min_t must be >= 50");
  if (correction_order < 0 || correction_order > kMaxCorrectionOrder)
    throw std::invalid_argument("RSConfig: correction_order must be in [0, " +
                                std::to_string(kMaxCorrectionOrder) + "]");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("RSConfig: newton_tol must be > 0");
  if (quad_order < 8) throw std::invalid_argument("RSConfig: quad_order must be >= 8");
}

long double theta_extended(double t) {
  const long double x = t;
  return x / 2 * std::log(x / kTwoPiL) - x / 2 - kPiL / 8 + 1 / (48 * x) + 7 / (5760 * x * x * x);
}

PhaseValue theta(double t, const RSConfig& cfg) {
  require_t(t, cfg, "theta");
  const double t2 = t * t;
  return {static_cast<double>(theta_extended(t)),
          0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t2) - 7.0 / (1920.0 * t2 * t2)};
}

double rs_coefficient(int k, double p) {
  const double x = 1.0 - 2.0 * p;
  switch (k) {
    case 0: {
      // Direct form, except near the removable singularities p = 1/4, 3/4.
      const double denom = std::cos(kTwoPi * p);
      if (std::abs(denom) >= 1e-3) return std::cos(kTwoPi * (p * p - p - 1.0 / 16.0)) / denom;
      return horner(kC0, x);
    }
    case 1:
      return horner(kC1, x);
    case 2:
      return horner(kC2, x);
    case 3:
      return horner(kC3, x);
    case 4:
      return horner(kC4, x);
    default:
      throw std::invalid_argument("rs_coefficient: k must be in [0, 4]");
  }
}

double rs_coefficient_derivative(int k, double p) {
  const double x = 1.0 - 2.0 * p;
  // dC/dp = -2 dC/dz
  switch (k) {
    case 0:
      return -2.0 * horner_derivative(kC0, x);
    case 1:
      return -2.0 * horner_derivative(kC1, x);
    case 2:
      return -2.0 * horner_derivative(kC2, x);
    case 3:
      return -2.0 * horner_derivative(kC3, x);
    case 4:
      return -2.0 * horner_derivative(kC4, x);
    default:
      throw std::invalid_argument("rs_coefficient_derivative: k must be in [0, 4]");
  }
}

double z(double t, const RSConfig& cfg) {
  require_t(t, cfg, "z");
  const double rho = std::sqrt(t / kTwoPi);
  const auto count = static_cast<std::size_t>(rho);
  const double th = reduced_theta(t);

  double sum = 0.0;
  for (std::size_t n = 1; n <= count; ++n) {
    const Term e = term(n);
    sum += e.inv_sqrt_n * std::cos(phase(t, th, e));
  }
  double result = 2.0 * sum;

  if (cfg.correction_order > 0) {
    const double p = rho - static_cast<double>(count);
    double series = 0.0;
    double scale = 1.0;
    for (int k = 0; k < cfg.correction_order; ++k) {
      series += rs_coefficient(k, p) * scale;
      scale /= rho;
    }
    const double sign = (count % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
    result += sign * series / std::sqrt(rho);
  }
  return result;
}

double z_prime(double t, const RSConfig& cfg) {
  require_t(t, cfg, "z_prime");
  const double rho = std::sqrt(t / kTwoPi);
  const auto count = static_cast<std::size_t>(rho);
  const double log_rho = std::log(rho);
  const double th = reduced_theta(t);

  double sum = 0.0;
  for (std::size_t n = 1; n <= count; ++n) {
    const Term e = term(n);
    sum += e.inv_sqrt_n * (log_rho - e.log_n) * std::sin(phase(t, th, e));
  }
  double result = -2.0 * sum;

  if (cfg.correction_order > 0) {
    // d/dt of (-1)^(N-1) sum_k C_k(p) rho^(-1/2-k), with dp/dt = drho/dt.
    const double p = rho - static_cast<double>(count);
    const double drho = 1.0 / (2.0 * kTwoPi * rho);
    double series = 0.0;
    double scale = 1.0 / std::sqrt(rho);
    for (int k = 0; k < cfg.correction_order; ++k) {
      series += (rs_coefficient_derivative(k, p) - (0.5 + k) * rs_coefficient(k, p) / rho) * scale;
      scale /= rho;
    }
    const double sign = (count % 2 == 1) ? 1.0 : -1.0;
    result += sign * series * drho;
  }
  return result;
}

double integrate(Integrand f, double a, double b, const RSConfig& cfg) {
  require_t(a, cfg, "integrate");
  if (!(a <= b)) throw DomainError("integrate: reversed interval");
  if (b - a > 10.0) throw DomainError("integrate: interval longer than 10");
  if (a == b) return 0.0;

  const GaussLegendre rule(cfg.quad_order);
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) * std::log(b / kTwoPi))) + 1;
  if (f == Integrand::Z) return rule.integrate([&](double t) { return z(t, cfg); }, a, b, panels);
  return rule.integrate([&](double t) { return z_prime(t, cfg); }, a, b, panels);
}

}  // namespace zgram
