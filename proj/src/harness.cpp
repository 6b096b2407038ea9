#include "zgram/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <tuple>

#include "zgram/parallel.hpp"

namespace zgram {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  ClaimId claim;
  double T;
  double parameter;
};

bool uses_offset(ClaimId id) {
  return id == ClaimId::T3_even || id == ClaimId::T3_odd || id == ClaimId::MV_G1 ||
         id == ClaimId::MV_G2;
}

bool needs_positive_tau(ClaimId id) { return id == ClaimId::NL73 || id == ClaimId::WNU; }

std::vector<Cell> plan_cells(const RunConfig& cfg) {
  const std::set<ClaimId> claims(cfg.claims.begin(), cfg.claims.end());
  std::vector<Cell> cells;
  for (ClaimId id : claims) {
    for (double T : cfg.T_ladder) {
      if (id == ClaimId::ALT31) {
        cells.push_back({id, T, 0.0});
        continue;
      }
      std::set<double> params;
      for (double p : uses_offset(id) ? cfg.offset_grid : cfg.tau_grid)
        if (!needs_positive_tau(id) || p > 0.0) params.insert(p);
      for (double p : params) cells.push_back({id, T, p});
    }
  }
  return cells;
}

VerificationReport evaluate(const Cell& cell, const RunConfig& cfg) {
  const Window w{cell.T, cfg.H_rule.length(cell.T, cfg.delta)};
  const EvalOptions opt{cfg.rs, 1};
  switch (cell.claim) {
    case ClaimId::T1:
      return verify_theorem1(cell.parameter, w, cfg.delta, opt);
    case ClaimId::T2_even:
      return verify_theorem2(Parity::Even, cell.parameter, w, cfg.delta, opt);
    case ClaimId::T2_odd:
      return verify_theorem2(Parity::Odd, cell.parameter, w, cfg.delta, opt);
    case ClaimId::T3_even:
      return verify_theorem3(Parity::Even, cell.parameter, w, cfg.delta, opt);
    case ClaimId::T3_odd:
      return verify_theorem3(Parity::Odd, cell.parameter, w, cfg.delta, opt);
    case ClaimId::MV_G1:
      return verify_mean_value(SetKind::G1, cell.parameter, w, opt);
    case ClaimId::MV_G2:
      return verify_mean_value(SetKind::G2, cell.parameter, w, opt);
    case ClaimId::ALT31:
    case ClaimId::ALT32:
    case ClaimId::ALT33:
      return verify_alternating(cell.claim, cell.parameter, w, cfg.delta, opt);
    case ClaimId::NL73:
    case ClaimId::WNU: {
      // first node of the window
      const auto nu = static_cast<std::int64_t>(std::ceil(theta_extended(cell.T) / kPi));
      return cell.claim == ClaimId::NL73 ? newton_leibniz_check(nu, cell.parameter, cfg.rs)
                                         : classify_w_nu(nu, cell.parameter, cfg.rs);
    }
  }
  throw std::logic_error("unhandled claim");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

double number_or_nan(const nlohmann::json& j) { return j.is_null() ? kNaN : j.get<double>(); }

std::vector<double> read_grid(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  return j.at(key).get<std::vector<double>>();
}

}  // namespace

double HRule::length(double T, double delta) const {
  switch (kind) {
    case Kind::Fixed:
      return fixed_H;
    case Kind::DeltaLn:
      return std::pow(T, delta) * std::log(T);
    case Kind::SixthEps:
      return std::pow(T, 1.0 / 6.0 + epsilon);
  }
  return kNaN;
}

void RunConfig::validate() const {
  try {
    rs.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  for (std::size_t i = 0; i < T_ladder.size(); ++i) {
    if (!(T_ladder[i] >= 1e3)) throw ConfigError("T_ladder entries must be >= 1e3");
    if (i > 0 && !(T_ladder[i] > T_ladder[i - 1]))
      throw ConfigError("T_ladder must be strictly increasing");
  }
  if (!(delta > 0.0 && delta <= 1.0 / 6.0)) throw ConfigError("delta must lie in (0, 1/6]");
  if (H_rule.kind == HRule::Kind::Fixed && !(H_rule.fixed_H > 0.0))
    throw ConfigError("fixed H must be > 0");
  if (!(H_rule.epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");

  bool want_tau = false, want_offset = false;
  for (ClaimId id : claims) (uses_offset(id) ? want_offset : want_tau) = true;
  for (double tau : tau_grid)
    if (!(tau >= -kPi && tau <= kPi)) throw ConfigError("tau grid entries must lie in [-pi, pi]");
  for (double x : offset_grid)
    if (!(x > 0.0 && x <= kPi / 2)) throw ConfigError("offset grid entries must lie in (0, pi/2]");
  if (want_tau && tau_grid.empty()) throw ConfigError("tau grid is empty");
  if (want_offset && offset_grid.empty()) throw ConfigError("offset grid is empty");
}

RunConfig RunConfig::default_suite(std::vector<double> T_ladder) {
  RunConfig cfg;
  cfg.claims = {ClaimId::T1,    ClaimId::T2_even, ClaimId::T2_odd, ClaimId::T3_even,
                ClaimId::T3_odd, ClaimId::MV_G1,  ClaimId::MV_G2,  ClaimId::ALT31,
                ClaimId::ALT32, ClaimId::ALT33,   ClaimId::NL73};
  cfg.T_ladder = std::move(T_ladder);
  cfg.tau_grid = {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi};
  cfg.offset_grid = {0.3, 0.8, kPi / 2};
  return cfg;
}

RunConfig config_from_json(const nlohmann::json& j) {
  try {
    RunConfig cfg;
    if (j.contains("claims")) {
      for (const auto& name : j.at("claims")) {
        const auto id = parse_claim(name.get<std::string>());
        if (!id) throw ConfigError("unknown claim '" + name.get<std::string>() + "'");
        cfg.claims.push_back(*id);
      }
    }
    cfg.T_ladder = read_grid(j, "T_ladder");
    cfg.tau_grid = read_grid(j, "tau_grid");
    cfg.offset_grid = read_grid(j, "offset_grid");
    if (j.contains("H_rule")) {
      const auto& h = j.at("H_rule");
      const auto kind = h.at("kind").get<std::string>();
      if (kind == "fixed") {
        cfg.H_rule.kind = HRule::Kind::Fixed;
        cfg.H_rule.fixed_H = h.at("H").get<double>();
      } else if (kind == "delta_ln") {
        cfg.H_rule.kind = HRule::Kind::DeltaLn;
      } else if (kind == "sixth_eps") {
        cfg.H_rule.kind = HRule::Kind::SixthEps;
      } else {
        throw ConfigError("unknown H_rule kind '" + kind + "'");
      }
      cfg.H_rule.epsilon = h.value("epsilon", cfg.H_rule.epsilon);
    }
    cfg.delta = j.value("delta", cfg.delta);
    if (j.contains("rs")) {
      const auto& r = j.at("rs");
      cfg.rs.min_t = r.value("min_t", cfg.rs.min_t);
      cfg.rs.correction_order = r.value("correction_order", cfg.rs.correction_order);
      cfg.rs.newton_tol = r.value("newton_tol", cfg.rs.newton_tol);
      cfg.rs.quad_order = r.value("quad_order", cfg.rs.quad_order);
    }
    cfg.threads = j.value("threads", cfg.threads);
    const auto output = j.value("output", std::string("csv"));
    if (output == "csv")
      cfg.output = OutputFormat::Csv;
    else if (output == "json")
      cfg.output = OutputFormat::Json;
    else
      throw ConfigError("output must be csv or json");
    cfg.out_path = j.value("out_path", std::string());
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

nlohmann::json config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["claims"] = nlohmann::json::array();
  for (ClaimId id : cfg.claims) j["claims"].push_back(std::string(to_string(id)));
  j["T_ladder"] = cfg.T_ladder;
  j["tau_grid"] = cfg.tau_grid;
  j["offset_grid"] = cfg.offset_grid;
  switch (cfg.H_rule.kind) {
    case HRule::Kind::Fixed:
      j["H_rule"] = {{"kind", "fixed"}, {"H", cfg.H_rule.fixed_H}, {"epsilon", cfg.H_rule.epsilon}};
      break;
    case HRule::Kind::DeltaLn:
      j["H_rule"] = {{"kind", "delta_ln"}, {"epsilon", cfg.H_rule.epsilon}};
      break;
    case HRule::Kind::SixthEps:
      j["H_rule"] = {{"kind", "sixth_eps"}, {"epsilon", cfg.H_rule.epsilon}};
      break;
  }
  j["delta"] = cfg.delta;
  j["rs"] = {{"min_t", cfg.rs.min_t},
             {"correction_order", cfg.rs.correction_order},
             {"newton_tol", cfg.rs.newton_tol},
             {"quad_order", cfg.rs.quad_order}};
  j["threads"] = cfg.threads;
  j["output"] = cfg.output == OutputFormat::Csv ? "csv" : "json";
  j["out_path"] = cfg.out_path;
  return j;
}

std::vector<ReportRow> run(const RunConfig& cfg, const WarningSink& warn) {
  cfg.validate();
  const auto cells = plan_cells(cfg);
  if (warn) {
    for (double T : cfg.T_ladder) {
      const Window w{T, cfg.H_rule.length(T, cfg.delta)};
      if (w.exceeds_h1(cfg.H_rule.epsilon))
        warn("H = " + format_double(w.H) + " exceeds T^(1/6+eps) at T = " + format_double(T));
    }
  }

  std::vector<ReportRow> rows(cells.size());
  parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const auto start = std::chrono::steady_clock::now();
    ReportRow& row = rows[i];
    try {
      row.report = evaluate(cell, cfg);
    } catch (const std::exception& e) {
      row.error = e.what();
      row.report = VerificationReport{};
      row.report.claim_id = cell.claim;
      row.report.T = cell.T;
      row.report.H = cfg.H_rule.length(cell.T, cfg.delta);
      row.report.parameter = cell.parameter;
      row.report.lhs = row.report.main_term = row.report.residual = row.report.normalizer = kNaN;
    }
    row.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  });
  // plan_cells already yields (claim, T, parameter) order; keep it explicit.
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tuple(static_cast<int>(a.report.claim_id), a.report.T, a.report.parameter) <
           std::tuple(static_cast<int>(b.report.claim_id), b.report.T, b.report.parameter);
  });
  return rows;
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& row : rows) {
    const auto& r = row.report;
    out += to_string(r.claim_id);
    for (double v : {r.T, r.H, r.parameter, r.lhs, r.main_term, r.residual, r.normalizer,
                     r.normalized_residual()}) {
      out += ',';
      out += format_double(v);
    }
    out += ',' + std::to_string(r.node_count) + ',' + format_double(row.elapsed_ms) + '\n';
  }
  return out;
}

std::string to_json(const std::vector<ReportRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    const auto& r = row.report;
    nlohmann::json j;
    j["claim_id"] = std::string(to_string(r.claim_id));
    j["T"] = number_or_null(r.T);
    j["H"] = number_or_null(r.H);
    j["parameter"] = number_or_null(r.parameter);
    j["lhs"] = number_or_null(r.lhs);
    j["main_term"] = number_or_null(r.main_term);
    j["residual"] = number_or_null(r.residual);
    j["normalizer"] = number_or_null(r.normalizer);
    j["normalized_residual"] = number_or_null(r.normalized_residual());
    j["node_count"] = r.node_count;
    j["elapsed_ms"] = row.elapsed_ms;
    if (!row.ok()) j["error"] = row.error;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + '\n';
}

std::vector<ReportRow> rows_from_json(const std::string& text) {
  std::vector<ReportRow> rows;
  for (const auto& j : nlohmann::json::parse(text)) {
    ReportRow row;
    auto& r = row.report;
    const auto id = parse_claim(j.at("claim_id").get<std::string>());
    if (!id) throw ConfigError("unknown claim in report");
    r.claim_id = *id;
    r.T = number_or_nan(j.at("T"));
    r.H = number_or_nan(j.at("H"));
    r.parameter = number_or_nan(j.at("parameter"));
    r.lhs = number_or_nan(j.at("lhs"));
    r.main_term = number_or_nan(j.at("main_term"));
    r.residual = number_or_nan(j.at("residual"));
    r.normalizer = number_or_nan(j.at("normalizer"));
    r.node_count = j.at("node_count").get<std::int64_t>();
    row.elapsed_ms = j.at("elapsed_ms").get<double>();
    row.error = j.value("error", std::string());
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const std::vector<ReportRow>& rows, OutputFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << (format == OutputFormat::Csv ? to_csv(rows) : to_json(rows));
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace zgram
