#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zgram/theorems.hpp"

namespace zgram {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the window length H is derived from T.
struct HRule {
  enum class Kind { Fixed, DeltaLn, SixthEps };
  Kind kind = Kind::DeltaLn;
  double fixed_H = 0.0;   // Kind::Fixed
  double epsilon = 0.05;  // Kind::SixthEps, and the H1 warning bound

  /// Fixed: fixed_H; DeltaLn: T^delta ln T; SixthEps: T^(1/6 + epsilon).
  double length(double T, double delta) const;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::vector<ClaimId> claims;
  std::vector<double> T_ladder;
  HRule H_rule;
  std::vector<double> tau_grid;
  std::vector<double> offset_grid;
  double delta = 1.0 / 6.0;
  RSConfig rs;
  int threads = 1;
  OutputFormat output = OutputFormat::Csv;
  std::string out_path;

  /// Throws ConfigError on any invalid field.
  void validate() const;

  /// Every claim except WNU on the standard tau and offset grids.
  static RunConfig default_suite(std::vector<double> T_ladder);
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

/// One executed cell.  A cell that threw carries the message in `error` and
/// NaN in every computed field.
struct ReportRow {
  VerificationReport report;
  double elapsed_ms = 0.0;
  std::string error;

  bool ok() const { return error.empty(); }
};

using WarningSink = std::function<void(const std::string&)>;

/// Runs every (claim, T, parameter) cell.  Rows come back sorted by
/// (claim_id, T, parameter) regardless of thread count.
std::vector<ReportRow> run(const RunConfig& cfg, const WarningSink& warn = {});

inline constexpr const char* kCsvHeader =
    "claim_id,T,H,parameter,lhs,main_term,residual,normalizer,normalized_residual,node_count,"
    "elapsed_ms";

std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_json(const std::string& text);

/// Writes the rows to `path` in the given format; throws IoError.
void emit(const std::vector<ReportRow>& rows, OutputFormat format, const std::string& path);

}  // namespace zgram
