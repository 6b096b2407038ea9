#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "zgram/node_grid.hpp"

namespace zgram {

enum class ClaimId { T1, T2_even, T2_odd, T3_even, T3_odd, MV_G1, MV_G2, ALT31, ALT32, ALT33, NL73, WNU };

std::string_view to_string(ClaimId id);
/// Inverse of to_string; std::nullopt for unknown names.
std::optional<ClaimId> parse_claim(std::string_view name);

/// One computed sum or integral next to its predicted leading term.
///
/// `normalizer` is the error scale the residual is measured against
/// (T^delta ln T for the O-bounds, 1 for the mean-value ratios).
struct VerificationReport {
  ClaimId claim_id = ClaimId::T1;
  double T = 0.0;
  double H = 0.0;
  double parameter = 0.0;  // tau, x or y
  double lhs = 0.0;
  double main_term = 0.0;
  double residual = 0.0;  // lhs - main_term
  double normalizer = 1.0;
  std::int64_t node_count = 0;

  double normalized_residual() const { return residual / normalizer; }
};

/// |S(a, b)| with S(a, b) = sum_{a <= n < b} n^{it}.
struct TrigSumEstimate {
  std::int64_t a = 1;
  std::int64_t b = 1;
  double t = 0.0;
  double modulus = 0.0;
  double delta_hat = 0.0;  // ln(modulus / sqrt a) / ln t when modulus > sqrt a
};

/// Threshold on |Z[t_nu(tau)] - Z(t_nu)| above which tau counts as a member
/// of w_nu.
inline constexpr double kWnuThreshold = 1e-8;

/// Shared evaluation settings for the verifiers.
struct EvalOptions {
  RSConfig rs{};
  int threads = 1;
};

/// F(tau, T, H): sum of Z over the window's nodes shifted by tau.
double sum_F(double tau, const Window& w, const EvalOptions& opt = {});

VerificationReport verify_theorem1(double tau, const Window& w, double delta,
                                   const EvalOptions& opt = {});

/// ALT31: sum (-1)^nu Z(t_nu); ALT32: sum (-1)^nu Z[t_nu(tau)];
/// ALT33: their difference.
VerificationReport verify_alternating(ClaimId variant, double tau, const Window& w, double delta,
                                      const EvalOptions& opt = {});

/// Sum over even (or odd) nu of Z[t_nu(tau)] - Z(t_nu).
VerificationReport verify_theorem2(Parity parity, double tau, const Window& w, double delta,
                                   const EvalOptions& opt = {});

/// Mean value of Z over [t_nu(-offset), t_nu(offset)] for the node's nu.
double xi_mean(Parity parity, double offset, const Node& node, const RSConfig& cfg = {});

VerificationReport verify_theorem3(Parity parity, double offset, const Window& w, double delta,
                                   const EvalOptions& opt = {});

/// Mean of Z over G1 (or G2) against +-2 sin(offset)/offset.
VerificationReport verify_mean_value(SetKind kind, double offset, const Window& w,
                                     const EvalOptions& opt = {});

TrigSumEstimate trig_sum(std::int64_t a, std::int64_t b, double t);

/// Largest delta_hat over the dyadic blocks (a, 2a) with 2a <= sqrt(t/2pi).
TrigSumEstimate max_dyadic_trig_sum(double t, int threads = 1);

/// |integral of Z' over [t_nu, t_nu(tau)]| against |Z[t_nu(tau)] - Z(t_nu)|.
VerificationReport newton_leibniz_check(std::int64_t nu, double tau, const RSConfig& cfg = {});

/// Membership of tau in w_nu: lhs = |Z[t_nu(tau)] - Z(t_nu)|, normalizer =
/// kWnuThreshold, so normalized_residual() > 1 marks a member.
VerificationReport classify_w_nu(std::int64_t nu, double tau, const RSConfig& cfg = {});
inline bool in_w_nu(const VerificationReport& r) { return r.lhs > kWnuThreshold; }

/// T^delta ln T.
double o_bound_scale(double T, double delta);

}  // namespace zgram
