#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace mhdlab {

enum class ReportFormat { ndjson, csv, plotdata };

std::string to_string(ReportFormat f);
ReportFormat parse_report_format(const std::string& name);

/// Flat records sharing one set of keys. `x_key` names the abscissa used for
/// plotdata; every other numeric key becomes one series.
struct Report {
  std::string name;
  std::string config_hash;
  std::string x_key = "t";
  std::vector<nlohmann::ordered_json> records;
};

/// ndjson:   {"config_hash": ..., "report": name} then one record per line
/// csv:      header from the first record's keys, one line per record
/// plotdata: "# <name> config_hash=<hash>" then "x y label" per finite number
/// Throws std::invalid_argument("nothing to emit") for an empty report.
std::string render_report(const Report& r, ReportFormat f);

/// Writes <dir>/<name>-<hash>.<ext>, creating dir. Throws std::runtime_error
/// when the file cannot be written.
std::filesystem::path emit_report(const Report& r, ReportFormat f, const std::filesystem::path& dir);

}  // namespace mhdlab
