#include "zgram/theorems.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "zgram/parallel.hpp"

namespace zgram {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr std::array<std::string_view, 12> kClaimNames = {
    "T1", "T2_even", "T2_odd", "T3_even", "T3_odd", "MV_G1",
    "MV_G2", "ALT31", "ALT32", "ALT33", "NL73", "WNU"};

void require_delta(double delta) {
  if (!(delta > 0.0 && delta <= 1.0 / 6.0))
    throw DomainError("delta must lie in (0, 1/6], got " + std::to_string(delta));
}

void require_tau(double tau) {
  if (!(tau >= -kPi && tau <= kPi))
    throw DomainError("tau = " + std::to_string(tau) + " outside [-pi, pi]");
}

void require_offset(double offset) {
  if (!(offset > 0.0 && offset <= kPi / 2))
    throw DomainError("offset = " + std::to_string(offset) + " outside (0, pi/2]");
}

// H ln(T / 2pi), the scale shared by all main terms.
double window_scale(const Window& w) { return w.H * std::log(w.T / (2.0 * kPi)); }

std::vector<double> z_at(const std::vector<Node>& nodes, const EvalOptions& opt) {
  std::vector<double> values(nodes.size());
  parallel_for(nodes.size(), opt.threads,
               [&](std::size_t i) { values[i] = z(nodes[i].t, opt.rs); });
  return values;
}

double alternating_sum(const std::vector<Node>& nodes, const std::vector<double>& values) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    sum.add(nodes[i].nu % 2 == 0 ? values[i] : -values[i]);
  return sum.value();
}

double plain_sum(const std::vector<double>& values) {
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value();
}

VerificationReport make_report(ClaimId id, const Window& w, double parameter, double lhs,
                               double main_term, double normalizer, std::size_t count) {
  VerificationReport r;
  r.claim_id = id;
  r.T = w.T;
  r.H = w.H;
  r.parameter = parameter;
  r.lhs = lhs;
  r.main_term = main_term;
  r.residual = lhs - main_term;
  r.normalizer = normalizer;
  r.node_count = static_cast<std::int64_t>(count);
  return r;
}

}  // namespace

std::string_view to_string(ClaimId id) { return kClaimNames[static_cast<std::size_t>(id)]; }

std::optional<ClaimId> parse_claim(std::string_view name) {
  for (std::size_t i = 0; i < kClaimNames.size(); ++i)
    if (kClaimNames[i] == name) return static_cast<ClaimId>(i);
  return std::nullopt;
}

double o_bound_scale(double T, double delta) { return std::pow(T, delta) * std::log(T); }

double sum_F(double tau, const Window& w, const EvalOptions& opt) {
  require_tau(tau);
  return plain_sum(z_at(enumerate_nodes(w, tau, Parity::All, opt.rs, opt.threads), opt));
}

VerificationReport verify_theorem1(double tau, const Window& w, double delta,
                                   const EvalOptions& opt) {
  require_delta(delta);
  require_tau(tau);
  const auto base = enumerate_nodes(w, 0.0, Parity::All, opt.rs, opt.threads);
  const double f0 = plain_sum(z_at(base, opt));
  const double ftau = tau == 0.0 ? f0 : sum_F(tau, w, opt);
  return make_report(ClaimId::T1, w, tau, ftau - f0, 0.0, o_bound_scale(w.T, delta), base.size());
}

VerificationReport verify_alternating(ClaimId variant, double tau, const Window& w, double delta,
                                      const EvalOptions& opt) {
  require_delta(delta);
  require_tau(tau);
  if (variant != ClaimId::ALT31 && variant != ClaimId::ALT32 && variant != ClaimId::ALT33)
    throw std::invalid_argument("verify_alternating: variant must be ALT31, ALT32 or ALT33");

  const double scale = window_scale(w) / kPi;
  const double normalizer = o_bound_scale(w.T, delta);
  const auto base = enumerate_nodes(w, 0.0, Parity::All, opt.rs, opt.threads);
  const double alt31 = alternating_sum(base, z_at(base, opt));
  if (variant == ClaimId::ALT31)
    return make_report(variant, w, tau, alt31, scale, normalizer, base.size());

  double alt32 = alt31;
  if (tau != 0.0) {
    const auto shifted = enumerate_nodes(w, tau, Parity::All, opt.rs, opt.threads);
    alt32 = alternating_sum(shifted, z_at(shifted, opt));
  }
  if (variant == ClaimId::ALT32)
    return make_report(variant, w, tau, alt32, scale * std::cos(tau), normalizer, base.size());

  const double half_sin = std::sin(tau / 2);
  return make_report(variant, w, tau, alt32 - alt31, -2.0 * scale * half_sin * half_sin,
                     normalizer, base.size());
}

VerificationReport verify_theorem2(Parity parity, double tau, const Window& w, double delta,
                                   const EvalOptions& opt) {
  require_delta(delta);
  require_tau(tau);
  if (parity == Parity::All) throw std::invalid_argument("verify_theorem2: parity must be even or odd");

  const auto base = enumerate_nodes(w, 0.0, parity, opt.rs, opt.threads);
  const auto z0 = z_at(base, opt);
  CompensatedSum sum;
  if (tau != 0.0) {
    const auto shifted = enumerate_nodes(w, tau, parity, opt.rs, opt.threads);
    const auto ztau = z_at(shifted, opt);
    for (std::size_t i = 0; i < base.size(); ++i) sum.add(ztau[i] - z0[i]);
  }
  const double half_sin = std::sin(tau / 2);
  const double magnitude = window_scale(w) / kPi * half_sin * half_sin;
  const bool even = parity == Parity::Even;
  return make_report(even ? ClaimId::T2_even : ClaimId::T2_odd, w, tau, sum.value(),
                     even ? -magnitude : magnitude, o_bound_scale(w.T, delta), base.size());
}

double xi_mean(Parity parity, double offset, const Node& node, const RSConfig& cfg) {
  require_offset(offset);
  if (parity == Parity::All || (parity == Parity::Even) != (node.nu % 2 == 0))
    throw std::invalid_argument("xi_mean: node index does not have the requested parity");
  const double lo = solve_node(node.nu, -offset, cfg).t;
  const double hi = solve_node(node.nu, offset, cfg).t;
  return integrate(Integrand::Z, lo, hi, cfg) / (hi - lo);
}

VerificationReport verify_theorem3(Parity parity, double offset, const Window& w, double delta,
                                   const EvalOptions& opt) {
  require_delta(delta);
  require_offset(offset);
  if (parity == Parity::All) throw std::invalid_argument("verify_theorem3: parity must be even or odd");

  const auto base = enumerate_nodes(w, 0.0, parity, opt.rs, opt.threads);
  std::vector<double> diffs(base.size());
  parallel_for(base.size(), opt.threads, [&](std::size_t i) {
    diffs[i] = xi_mean(parity, offset, base[i], opt.rs) - z(base[i].t, opt.rs);
  });
  const double magnitude = window_scale(w) / (2.0 * kPi) * (1.0 - std::sin(offset) / offset);
  const bool even = parity == Parity::Even;
  return make_report(even ? ClaimId::T3_even : ClaimId::T3_odd, w, offset, plain_sum(diffs),
                     even ? -magnitude : magnitude, o_bound_scale(w.T, delta), base.size());
}

VerificationReport verify_mean_value(SetKind kind, double offset, const Window& w,
                                     const EvalOptions& opt) {
  require_offset(offset);
  const auto set = build_set(kind, offset, w, opt.rs, opt.threads);
  if (set.segments.empty()) throw DomainError("verify_mean_value: window contains no segments");

  std::vector<double> pieces(set.segments.size());
  parallel_for(set.segments.size(), opt.threads, [&](std::size_t i) {
    pieces[i] = integrate(Integrand::Z, set.segments[i].first, set.segments[i].second, opt.rs);
  });
  const double predicted = 2.0 * std::sin(offset) / offset;
  const bool g1 = kind == SetKind::G1;
  return make_report(g1 ? ClaimId::MV_G1 : ClaimId::MV_G2, w, offset,
                     plain_sum(pieces) / set.measure, g1 ? predicted : -predicted, 1.0,
                     set.segments.size());
}

TrigSumEstimate trig_sum(std::int64_t a, std::int64_t b, double t) {
  if (a < 1 || b < a || b > 2 * a)
    throw DomainError("trig_sum: need 1 <= a <= b <= 2a");
  if (static_cast<double>(b) > std::sqrt(t / (2.0 * kPi)))
    throw DomainError("trig_sum: b exceeds sqrt(t / 2pi)");

  std::complex<double> sum{0.0, 0.0};
  for (std::int64_t n = a; n < b; ++n) {
    const double phase = t * std::log(static_cast<double>(n));
    sum += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  TrigSumEstimate est;
  est.a = a;
  est.b = b;
  est.t = t;
  est.modulus = std::abs(sum);
  const double root_a = std::sqrt(static_cast<double>(a));
  est.delta_hat = est.modulus > root_a ? std::log(est.modulus / root_a) / std::log(t) : 0.0;
  return est;
}

TrigSumEstimate max_dyadic_trig_sum(double t, int threads) {
  const auto top = static_cast<std::int64_t>(std::floor(std::sqrt(t / (2.0 * kPi)))) / 2;
  if (top < 1) throw DomainError("max_dyadic_trig_sum: t too small for any dyadic block");
  std::vector<TrigSumEstimate> all(static_cast<std::size_t>(top));
  parallel_for(all.size(), threads, [&](std::size_t i) {
    const auto a = static_cast<std::int64_t>(i) + 1;
    all[i] = trig_sum(a, 2 * a, t);
  });
  TrigSumEstimate best = all.front();
  for (const auto& e : all)
    if (e.delta_hat > best.delta_hat) best = e;
  return best;
}

VerificationReport newton_leibniz_check(std::int64_t nu, double tau, const RSConfig& cfg) {
  if (!(tau > 0.0 && tau <= kPi)) throw DomainError("newton_leibniz_check: tau must lie in (0, pi]");
  const double t0 = solve_node(nu, 0.0, cfg).t;
  const double t1 = solve_node(nu, tau, cfg).t;
  const double lhs = std::abs(integrate(Integrand::ZPrime, t0, t1, cfg));
  const double rhs = std::abs(z(t1, cfg) - z(t0, cfg));
  return make_report(ClaimId::NL73, Window{t0, t1 - t0}, tau, lhs, rhs, std::max(1e-12, rhs), 1);
}

VerificationReport classify_w_nu(std::int64_t nu, double tau, const RSConfig& cfg) {
  if (!(tau > 0.0 && tau <= kPi)) throw DomainError("classify_w_nu: tau must lie in (0, pi]");
  const double t0 = solve_node(nu, 0.0, cfg).t;
  const double t1 = solve_node(nu, tau, cfg).t;
  return make_report(ClaimId::WNU, Window{t0, t1 - t0}, tau, std::abs(z(t1, cfg) - z(t0, cfg)), 0.0,
                     kWnuThreshold, 1);
}

}  // namespace zgram
