// Command-line front end: verify, gram, trigsum, scan.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zgram/harness.hpp"

namespace {

using namespace zgram;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct SuiteOptions {
  std::string config_path;
  std::vector<double> T;
  double H = 0.0;
  std::string h_rule;
  std::vector<double> tau;
  std::vector<double> offset;
  double delta = 0.0;
  double epsilon = 0.0;
  bool lindelof = false;
  std::vector<std::string> claims;
  int rs_order = -1;
  int threads = 0;
  std::string out;
  std::string format;
};

void add_suite_options(CLI::App* cmd, SuiteOptions& o, bool with_ladder) {
  cmd->add_option("--config", o.config_path, "JSON file mirroring RunConfig");
  if (with_ladder) cmd->add_option("--T", o.T, "T ladder (strictly increasing, >= 1e3)")->delimiter(',');
  cmd->add_option("--H", o.H, "fixed window length (implies --h-rule fixed)");
  cmd->add_option("--h-rule", o.h_rule, "fixed | delta_ln | sixth_eps")
      ->check(CLI::IsMember({"fixed", "delta_ln", "sixth_eps"}));
  cmd->add_option("--tau", o.tau, "tau grid")->delimiter(',');
  cmd->add_option("--offset", o.offset, "offset (x or y) grid")->delimiter(',');
  cmd->add_option("--delta", o.delta, "exponent Delta in (0, 1/6]");
  cmd->add_option("--epsilon", o.epsilon, "epsilon in H1 = T^(1/6+eps)");
  cmd->add_flag("--lindelof", o.lindelof, "normalize residuals with Delta = epsilon/2");
  cmd->add_option("--claims", o.claims, "claim ids, e.g. T1,ALT31")->delimiter(',');
  cmd->add_option("--rs-order", o.rs_order, "Riemann-Siegel correction terms (0..5)");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

RunConfig build_config(const SuiteOptions& o, std::vector<double> default_ladder) {
  RunConfig cfg = RunConfig::default_suite(std::move(default_ladder));
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw IoError("cannot read config '" + o.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    const RunConfig defaults = cfg;
    cfg = config_from_json(j);
    if (!j.contains("claims")) cfg.claims = defaults.claims;
    if (!j.contains("T_ladder")) cfg.T_ladder = defaults.T_ladder;
    if (!j.contains("tau_grid")) cfg.tau_grid = defaults.tau_grid;
    if (!j.contains("offset_grid")) cfg.offset_grid = defaults.offset_grid;
  }
  if (!o.T.empty()) cfg.T_ladder = o.T;
  if (!o.h_rule.empty()) {
    if (o.h_rule == "fixed") cfg.H_rule.kind = HRule::Kind::Fixed;
    if (o.h_rule == "delta_ln") cfg.H_rule.kind = HRule::Kind::DeltaLn;
    if (o.h_rule == "sixth_eps") cfg.H_rule.kind = HRule::Kind::SixthEps;
  }
  if (o.H > 0.0) {
    cfg.H_rule.fixed_H = o.H;
    if (o.h_rule.empty()) cfg.H_rule.kind = HRule::Kind::Fixed;
  }
  if (!o.tau.empty()) cfg.tau_grid = o.tau;
  if (!o.offset.empty()) cfg.offset_grid = o.offset;
  if (o.delta > 0.0) cfg.delta = o.delta;
  if (o.epsilon > 0.0) cfg.H_rule.epsilon = o.epsilon;
  if (o.lindelof) cfg.delta = cfg.H_rule.epsilon / 2.0;
  if (!o.claims.empty()) {
    cfg.claims.clear();
    for (const auto& name : o.claims) {
      const auto id = parse_claim(name);
      if (!id) throw ConfigError("unknown claim '" + name + "'");
      cfg.claims.push_back(*id);
    }
  }
  if (o.rs_order >= 0) cfg.rs.correction_order = o.rs_order;
  if (o.threads > 0) cfg.threads = o.threads;
  if (!o.out.empty()) cfg.out_path = o.out;
  if (o.format == "csv") cfg.output = OutputFormat::Csv;
  if (o.format == "json") cfg.output = OutputFormat::Json;
  cfg.validate();
  return cfg;
}

int run_suite(const RunConfig& cfg) {
  const auto rows = run(cfg, [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; });
  for (const auto& row : rows)
    if (!row.ok())
      std::cerr << "cell " << to_string(row.report.claim_id) << " T=" << row.report.T
                << " parameter=" << row.report.parameter << " failed: " << row.error << '\n';
  if (cfg.out_path.empty()) {
    std::cout << (cfg.output == OutputFormat::Csv ? to_csv(rows) : to_json(rows));
  } else {
    emit(rows, cfg.output, cfg.out_path);
  }
  return kExitOk;
}

std::vector<double> decade_ladder(double from, double to, int per_decade) {
  if (!(from >= 1e3) || !(to >= from) || per_decade < 1)
    throw ConfigError("scan needs 1e3 <= --from <= --to and --per-decade >= 1");
  std::vector<double> ladder;
  const double lo = std::log10(from), hi = std::log10(to);
  const int steps = static_cast<int>(std::floor((hi - lo) * per_decade + 1e-9));
  for (int i = 0; i <= steps; ++i) ladder.push_back(std::pow(10.0, lo + static_cast<double>(i) / per_decade));
  return ladder;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann-Siegel evaluation of Z on shifted Gram grids and checks of the sum formulas"};
  app.require_subcommand(1);

  SuiteOptions verify_opts;
  auto* verify_cmd = app.add_subcommand("verify", "run the configured claims");
  add_suite_options(verify_cmd, verify_opts, true);

  SuiteOptions scan_opts;
  double scan_from = 1e6, scan_to = 1e8;
  int per_decade = 1;
  auto* scan_cmd = app.add_subcommand("scan", "default suite over a geometric T ladder");
  add_suite_options(scan_cmd, scan_opts, false);
  scan_cmd->add_option("--from", scan_from, "smallest T");
  scan_cmd->add_option("--to", scan_to, "largest T");
  scan_cmd->add_option("--per-decade", per_decade, "ladder points per decade");

  double gram_T = 1e6, gram_H = 10.0, gram_tau = 0.0;
  int gram_rs_order = -1, gram_threads = 1;
  auto* gram_cmd = app.add_subcommand("gram", "print the shifted Gram points of a window");
  gram_cmd->add_option("--T", gram_T, "window start");
  gram_cmd->add_option("--H", gram_H, "window length");
  gram_cmd->add_option("--tau", gram_tau, "phase shift in [-pi, pi]");
  gram_cmd->add_option("--rs-order", gram_rs_order, "Riemann-Siegel correction terms (0..5)");
  gram_cmd->add_option("--threads", gram_threads, "worker threads");

  std::vector<double> trig_t{1e6};
  std::int64_t trig_a = 0, trig_b = 0;
  int trig_threads = 1;
  auto* trig_cmd = app.add_subcommand("trigsum", "moduli of S(a,b) = sum n^{it}");
  trig_cmd->add_option("--T", trig_t, "values of t")->delimiter(',');
  trig_cmd->add_option("--a", trig_a, "block start (sweep all dyadic blocks when omitted)");
  trig_cmd->add_option("--b", trig_b, "block end, defaults to 2a");
  trig_cmd->add_option("--threads", trig_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*verify_cmd) return run_suite(build_config(verify_opts, {1e6, 1e7, 1e8}));
    if (*scan_cmd) {
      auto cfg = build_config(scan_opts, decade_ladder(scan_from, scan_to, per_decade));
      return run_suite(cfg);
    }
    if (*gram_cmd) {
      RSConfig rs;
      if (gram_rs_order >= 0) rs.correction_order = gram_rs_order;
      rs.validate();
      const auto nodes = enumerate_nodes(Window{gram_T, gram_H}, gram_tau, Parity::All, rs, gram_threads);
      std::printf("nu,tau,t,z\n");
      for (const auto& n : nodes)
        std::printf("%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(n.nu), n.tau, n.t, z(n.t, rs));
      return kExitOk;
    }
    if (*trig_cmd) {
      std::printf("a,b,t,modulus,delta_hat\n");
      for (double t : trig_t) {
        std::vector<TrigSumEstimate> rows;
        if (trig_a > 0) {
          rows.push_back(trig_sum(trig_a, trig_b > 0 ? trig_b : 2 * trig_a, t));
        } else {
          const auto top = static_cast<std::int64_t>(std::sqrt(t / (2.0 * 3.141592653589793))) / 2;
          for (std::int64_t a = 1; a <= top; ++a) rows.push_back(trig_sum(a, 2 * a, t));
        }
        for (const auto& e : rows)
          std::printf("%lld,%lld,%.17g,%.17g,%.17g\n", static_cast<long long>(e.a),
                      static_cast<long long>(e.b), e.t, e.modulus, e.delta_hat);
      }
      return kExitOk;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}
