// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "oracle_values.hpp"
#include "zgram/harness.hpp"

using namespace zgram;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void note(int id, const std::string& detail) {
  std::printf("INFO criterion %d: %s\n", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Worst relative |z| error over the oracle samples and the number outside 1e-5.
std::pair<double, int> oracle_errors(int order) {
  RSConfig cfg;
  cfg.correction_order = order;
  double worst = 0.0;
  int bad = 0;
  for (const auto& s : oracle::kZeta) {
    const double rel = std::abs(std::abs(z(s.t, cfg)) - s.abs_zeta) / s.abs_zeta;
    worst = std::max(worst, rel);
    bad += rel > 1e-5;
  }
  return {worst, bad};
}

void criterion1() {
  Stopwatch sw;
  const auto [worst, bad] = oracle_errors(1);
  const double secs = sw.seconds();
  report(1, bad == 0 && secs < 10.0,
         fmt("correction_order=1: %d/100 samples beyond relative 1e-5, worst %.3g, %.2f s", bad,
             worst, secs));
  const auto [worst5, bad5] = oracle_errors(5);
  note(1, fmt("correction_order=5: %d/100 beyond 1e-5, worst %.3g", bad5, worst5));
}

void criterion2() {
  const RSConfig cfg;
  Stopwatch sw;
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<std::int64_t> nus(min_node_index() + 1, 100000);
  std::uniform_real_distribution<double> taus(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i)
    worst = std::max(worst, std::abs(phase_residual(solve_node(nus(rng), taus(rng), cfg))));
  double gram_err = 0.0;
  int matched = 0;
  for (const auto& g : oracle::kGram) {
    if (g.nu < min_node_index() || matched == 10) continue;
    gram_err = std::max(gram_err, std::abs(solve_node(g.nu, 0.0, cfg).t - g.t));
    ++matched;
  }
  const double secs = sw.seconds();
  report(2, worst <= 1e-10 && matched == 10 && gram_err <= 1e-8 && secs < 5.0,
         fmt("max residual %.3g over 1e4 nodes, first %d admissible Gram points within %.3g, %.2f s",
             worst, matched, gram_err, secs));
}

void criterion3() {
  const Window w{1e6, 1e3};
  const auto n = enumerate_nodes(w, 0.0, Parity::All).size();
  const double expected = w.H * std::log(w.T / (2 * kPi)) / (2 * kPi);
  const double rel = std::abs(n - expected) / expected;
  report(3, rel <= 0.01, fmt("%zu nodes vs %.2f predicted, relative %.3g", n, expected, rel));
}

void criterion4() {
  const double T = 1e6;
  const double log_p0 = std::log(std::sqrt(T / (2 * kPi)));
  const Window w{T, 1000 * 2 * kPi / std::log(T / (2 * kPi))};
  const auto base = enumerate_nodes(w, 0.0, Parity::All);
  double worst = 0.0;
  for (int k = -8; k <= 8; ++k) {
    const double tau = kPi * k / 8;
    const auto shifted = enumerate_nodes(w, tau, Parity::All);
    for (std::size_t i = 0; i < base.size(); ++i)
      worst = std::max(worst, std::abs((shifted[i].t - base[i].t) * log_p0 - tau));
  }
  report(4, worst <= 1e-3 && base.size() >= 1000,
         fmt("max deviation %.3g over %zu nodes x 17 taus", worst, base.size()));
}

void criterion5() {
  const Window w{1e6, 100.0};
  const double delta = 1.0 / 6.0;
  bool ok = verify_theorem1(0.0, w, delta).lhs == 0.0;
  for (double tau : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
    const double a31 = verify_alternating(ClaimId::ALT31, tau, w, delta).lhs;
    const double a32 = verify_alternating(ClaimId::ALT32, tau, w, delta).lhs;
    ok &= verify_alternating(ClaimId::ALT33, tau, w, delta).lhs == a32 - a31;
  }
  for (double tau : {0.0, -1.0, 2.0}) {
    const auto all = enumerate_nodes(w, tau, Parity::All);
    const auto even = enumerate_nodes(w, tau, Parity::Even);
    const auto odd = enumerate_nodes(w, tau, Parity::Odd);
    std::size_t e = 0, o = 0;
    for (const auto& n : all) {
      const auto& next = n.nu % 2 == 0 ? even.at(e++) : odd.at(o++);
      ok &= next.nu == n.nu && next.t == n.t;
    }
    ok &= e == even.size() && o == odd.size();
  }
  report(5, ok, "T1 at tau=0, ALT33 = ALT32 - ALT31, parity partition");
}

void criterion6() {
  const RSConfig cfg;
  std::mt19937_64 rng(6);
  const auto nu0 = static_cast<std::int64_t>(std::ceil(theta_extended(1e6) / kPi));
  std::uniform_int_distribution<std::int64_t> nus(nu0, nu0 + 2000);
  std::uniform_real_distribution<double> taus(0.0, kPi);
  double worst_nl = 0.0;
  for (int i = 0; i < 50; ++i) {
    double tau = 0.0;
    while (tau == 0.0) tau = taus(rng);
    worst_nl = std::max(worst_nl, std::abs(newton_leibniz_check(nus(rng), tau, cfg).normalized_residual()));
  }
  std::uniform_real_distribution<double> ts(1e3, 1e6);
  double worst_fd = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = ts(rng);
    const double lo = t - 1e-4, hi = t + 1e-4;
    const double fd = (z(hi, cfg) - z(lo, cfg)) / (hi - lo);
    worst_fd = std::max(worst_fd, std::abs(z_prime(t, cfg) - fd));
  }
  report(6, worst_nl <= 1e-4 && worst_fd <= 5e-3,
         fmt("Newton-Leibniz worst normalized %.3g on 50 nodes, z_prime vs differences %.3g", worst_nl,
             worst_fd));
}

void criterion7(const std::vector<ReportRow>& rows) {
  const double T = 1e8;
  auto find = [&](ClaimId id, double p) -> const ReportRow* {
    for (const auto& r : rows)
      if (r.report.claim_id == id && r.report.T == T && r.report.parameter == p) return &r;
    return nullptr;
  };
  struct Check {
    ClaimId id;
    double parameter;
    double lo, hi;
  };
  const Check checks[] = {{ClaimId::ALT31, 0.0, 0.85, 1.15},  {ClaimId::T2_even, kPi, 0.8, 1.2},
                          {ClaimId::T2_odd, kPi, 0.8, 1.2},   {ClaimId::T3_even, kPi / 2, 0.8, 1.2},
                          {ClaimId::T3_odd, kPi / 2, 0.8, 1.2}, {ClaimId::MV_G1, kPi / 2, 0.9, 1.1}};
  bool ok = true;
  std::string detail;
  double slowest = 0.0;
  for (const auto& c : checks) {
    const auto* r = find(c.id, c.parameter);
    if (!r || !r->ok()) {
      ok = false;
      detail += std::string(to_string(c.id)) + " missing; ";
      continue;
    }
    const double ratio = r->report.lhs / r->report.main_term;
    ok &= ratio >= c.lo && ratio <= c.hi;
    detail += fmt("%s %.4f; ", std::string(to_string(c.id)).c_str(), ratio);
  }
  for (const auto& r : rows)
    if (r.report.T == T) slowest = std::max(slowest, r.elapsed_ms / 1e3);
  ok &= slowest < 60.0;
  report(7, ok, detail + fmt("slowest cell %.1f s", slowest));
}

void criterion8(const std::vector<ReportRow>& rows) {
  std::map<std::tuple<int, double, double>, double> nr;
  for (const auto& r : rows)
    nr[{static_cast<int>(r.report.claim_id), r.report.parameter, r.report.T}] =
        std::abs(r.report.normalized_residual());
  bool ok = true;
  std::string worst;
  double worst_ratio = 0.0;
  for (ClaimId id : {ClaimId::T1, ClaimId::T2_even, ClaimId::T2_odd}) {
    for (double tau : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
      const int k = static_cast<int>(id);
      const double base = nr.at({k, tau, 1e6});
      for (double T : {1e7, 1e8}) {
        const double v = nr.at({k, tau, T});
        const bool pass = v <= 3.0 * base;
        ok &= pass;
        if (!pass) {
          std::printf("  %s tau=%.4f: |normalized residual| %.3g at T=%g vs %.3g at T=1e6\n",
                      std::string(to_string(id)).c_str(), tau, v, T, base);
        }
        const double ratio = base > 0.0 ? v / base : (v > 0.0 ? INFINITY : 0.0);
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst = fmt("%s tau=%.4f T=%g", std::string(to_string(id)).c_str(), tau, T);
        }
      }
    }
  }
  report(8, ok, fmt("largest growth factor %.3g (%s), limit 3", worst_ratio, worst.c_str()));
  double sup6 = 0.0, sup7 = 0.0, sup8 = 0.0;
  for (const auto& [key, v] : nr) {
    const auto id = static_cast<ClaimId>(std::get<0>(key));
    if (id != ClaimId::T1 && id != ClaimId::T2_even && id != ClaimId::T2_odd) continue;
    const double T = std::get<2>(key);
    (T == 1e6 ? sup6 : T == 1e7 ? sup7 : sup8) = std::max(T == 1e6 ? sup6 : T == 1e7 ? sup7 : sup8, v);
  }
  note(8, fmt("sup over tau and claims: %.3g at 1e6, %.3g at 1e7, %.3g at 1e8", sup6, sup7, sup8));
}

void criterion9() {
  Stopwatch sw;
  const auto best = max_dyadic_trig_sum(1e6);
  const double secs = sw.seconds();
  report(9, best.delta_hat <= 1.0 / 6.0 + 0.05 && secs < 30.0,
         fmt("max delta_hat %.4f at a=%lld, %.2f s", best.delta_hat, static_cast<long long>(best.a),
             secs));
}

std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();

  const auto suite = RunConfig::default_suite({1e6, 1e7, 1e8});
  Stopwatch sw;
  const auto first = run(suite);
  std::printf("default suite: %zu cells in %.1f s\n", first.size(), sw.seconds());
  for (const auto& r : first)
    if (!r.ok())
      std::printf("  cell %s T=%g parameter=%g failed: %s\n",
                  std::string(to_string(r.report.claim_id)).c_str(), r.report.T, r.report.parameter,
                  r.error.c_str());
  criterion7(first);
  criterion8(first);
  criterion9();

  const auto second = run(suite);
  const bool same = without_timing(to_csv(first)) == without_timing(to_csv(second));
  report(10, same, fmt("two default-suite runs, %zu rows, CSV %s", first.size(),
                       same ? "identical" : "differs"));

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
