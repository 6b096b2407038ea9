#include "zgram/node_grid.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "zgram/parallel.hpp"

namespace zgram {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr int kMaxNewtonIterations = 50;

long double target_phase(std::int64_t nu, double tau) {
  return kPiL * static_cast<long double>(nu) + static_cast<long double>(tau);
}

double theta_derivative(double t) {
  const double t2 = t * t;
  return 0.5 * std::log(t / (2.0 * kPi)) - 1.0 / (48.0 * t2) - 7.0 / (1920.0 * t2 * t2);
}

// Inverse of the main term (t/2) ln(t/2 pi e) - pi/8 = pi m.
double initial_guess(std::int64_t nu, double tau) {
  const double m = static_cast<double>(nu) + tau / kPi + 0.125;
  return 2.0 * kPi * m / lambert_w0(m / std::numbers::e);
}

// Among t and its two neighbouring doubles, the one closest to the target.
double polish(double t, long double target) {
  double best = t;
  long double best_err = std::abs(theta_extended(t) - target);
  for (double cand : {std::nextafter(t, 0.0), std::nextafter(t, std::numeric_limits<double>::infinity())}) {
    const long double err = std::abs(theta_extended(cand) - target);
    if (err < best_err) {
      best = cand;
      best_err = err;
    }
  }
  return best;
}

double bisect(long double target, double guess, const RSConfig& cfg) {
  double lo = cfg.min_t;
  double hi = std::max(guess, cfg.min_t) + 10.0;
  for (int i = 0; theta_extended(hi) < target; ++i) {
    if (i > 200) throw ConvergenceError("solve_node: could not bracket the target phase");
    hi *= 2.0;
  }
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (theta_extended(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return polish(0.5 * (lo + hi), target);
}

}  // namespace

void Window::validate() const {
  if (!(T >= 1e3) || !std::isfinite(T)) throw std::invalid_argument("Window: T must be >= 1e3");
  if (!(H > 0.0) || !std::isfinite(H)) throw std::invalid_argument("Window: H must be > 0");
}

bool Window::exceeds_h1(double epsilon) const { return H > std::pow(T, 1.0 / 6.0 + epsilon); }

double lambert_w0(double x) {
  if (!(x >= 0.0)) throw DomainError("lambert_w0: x must be >= 0");
  if (x == 0.0) return 0.0;
  double w = x < 3.0 ? std::log1p(x) : std::log(x) - std::log(std::log(x));
  for (int i = 0; i < 64; ++i) {
    // Halley step on w e^w - x
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

std::int64_t min_node_index(const RSConfig& cfg) {
  return static_cast<std::int64_t>(std::ceil(theta_extended(cfg.min_t) / kPiL));
}

Node solve_node(std::int64_t nu, double tau, const RSConfig& cfg) {
  if (!(tau >= -kPi && tau <= kPi))
    throw DomainError("solve_node: tau = " + std::to_string(tau) + " outside [-pi, pi]");
  const long double target = target_phase(nu, tau);
  if (target < theta_extended(cfg.min_t))
    throw DomainError("solve_node: nu = " + std::to_string(nu) + " places the node below min_t");

  const double guess = initial_guess(nu, tau);
  double t = guess;
  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    if (!std::isfinite(t) || t < cfg.min_t) return {nu, tau, bisect(target, guess, cfg)};
    const long double residual = theta_extended(t) - target;
    if (std::abs(residual) <= cfg.newton_tol) return {nu, tau, polish(t, target)};
    const double next = t - static_cast<double>(residual / theta_derivative(t));
    // Below the double resolution of t the residual cannot shrink further.
    if (std::abs(next - t) <= 2.0 * std::numeric_limits<double>::epsilon() * t)
      return {nu, tau, polish(next, target)};
    t = next;
  }
  throw ConvergenceError("solve_node: Newton iteration did not converge for nu = " +
                         std::to_string(nu));
}

double phase_residual(const Node& node) {
  return static_cast<double>(theta_extended(node.t) - target_phase(node.nu, node.tau));
}

namespace {

// First and last nu with t_nu(0) in [T, T + H]; first > last when empty.
std::pair<std::int64_t, std::int64_t> index_range(const Window& w, const RSConfig& cfg) {
  auto first = static_cast<std::int64_t>(std::ceil(theta_extended(w.T) / kPiL));
  auto last = static_cast<std::int64_t>(std::floor(theta_extended(w.T + w.H) / kPiL));
  const std::int64_t floor_index = min_node_index(cfg);
  // The phase estimate can be off by an ulp at an exact boundary; settle it
  // with the solved abscissa.
  if (first - 1 >= floor_index && solve_node(first - 1, 0.0, cfg).t >= w.T) --first;
  if (first <= last && solve_node(first, 0.0, cfg).t < w.T) ++first;
  if (solve_node(last + 1, 0.0, cfg).t <= w.T + w.H) ++last;
  if (first <= last && solve_node(last, 0.0, cfg).t > w.T + w.H) --last;
  return {first, last};
}

}  // namespace

std::vector<Node> enumerate_nodes(const Window& w, double tau, Parity parity, const RSConfig& cfg,
                                  int threads) {
  w.validate();
  if (!(tau >= -kPi && tau <= kPi))
    throw DomainError("enumerate_nodes: tau = " + std::to_string(tau) + " outside [-pi, pi]");
  const auto [first, last] = index_range(w, cfg);

  std::vector<std::int64_t> indices;
  for (std::int64_t nu = first; nu <= last; ++nu) {
    const bool even = nu % 2 == 0;
    if (parity == Parity::All || (parity == Parity::Even) == even) indices.push_back(nu);
  }
  std::vector<Node> nodes(indices.size());
  parallel_for(indices.size(), threads,
               [&](std::size_t i) { nodes[i] = solve_node(indices[i], tau, cfg); });
  return nodes;
}

SegmentSet build_set(SetKind kind, double offset, const Window& w, const RSConfig& cfg,
                     int threads) {
  if (!(offset > 0.0 && offset <= kPi / 2))
    throw DomainError("build_set: offset must lie in (0, pi/2]");
  const auto centres =
      enumerate_nodes(w, 0.0, kind == SetKind::G1 ? Parity::Even : Parity::Odd, cfg, threads);

  SegmentSet set;
  set.segments.resize(centres.size());
  parallel_for(centres.size(), threads, [&](std::size_t i) {
    set.segments[i] = {solve_node(centres[i].nu, -offset, cfg).t,
                       solve_node(centres[i].nu, offset, cfg).t};
  });
  CompensatedSum measure;
  for (const auto& [lo, hi] : set.segments) measure.add(hi - lo);
  set.measure = measure.value();
  return set;
}

}  // namespace zgram
