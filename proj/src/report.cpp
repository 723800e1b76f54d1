#include "mhdlab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mhdlab {

namespace {

constexpr const char* kFormats[] = {"ndjson", "csv", "plotdata"};
constexpr const char* kExtensions[] = {"ndjson", "csv", "dat"};

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float() && !std::isfinite(v.get<double>())) return "";
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_structured()) throw std::invalid_argument("csv cells must be scalars");
  return v.dump();
}

}  // namespace

std::string to_string(ReportFormat f) { return kFormats[static_cast<int>(f)]; }

ReportFormat parse_report_format(const std::string& name) {
  for (int i = 0; i < 3; ++i) {
    if (name == kFormats[i]) return static_cast<ReportFormat>(i);
  }
  throw std::invalid_argument("unknown report format '" + name + "'");
}

std::string render_report(const Report& r, ReportFormat f) {
  if (r.records.empty()) throw std::invalid_argument("nothing to emit");
  std::ostringstream os;
  switch (f) {
    case ReportFormat::ndjson: {
      nlohmann::ordered_json head;
      head["config_hash"] = r.config_hash;
      head["report"] = r.name;
      os << head.dump() << '\n';
      for (const auto& rec : r.records) os << rec.dump() << '\n';
      break;
    }
    case ReportFormat::csv: {
      const auto& first = r.records.front();
      bool lead = true;
      for (const auto& [k, v] : first.items()) {
        os << (lead ? "" : ",") << k;
        lead = false;
      }
      os << '\n';
      for (const auto& rec : r.records) {
        if (rec.size() != first.size()) throw std::invalid_argument("csv records must share their keys");
        lead = true;
        for (const auto& [k, v] : first.items()) {
          const auto it = rec.find(k);
          if (it == rec.end()) throw std::invalid_argument("csv records must share their keys");
          os << (lead ? "" : ",") << csv_cell(*it);
          lead = false;
        }
        os << '\n';
      }
      break;
    }
    case ReportFormat::plotdata: {
      os << "# " << r.name << " config_hash=" << r.config_hash << '\n';
      for (const auto& rec : r.records) {
        const auto x = rec.find(r.x_key);
        if (x == rec.end() || !x->is_number()) throw std::invalid_argument("plotdata needs a numeric '" + r.x_key + "'");
        for (const auto& [k, v] : rec.items()) {
          if (k == r.x_key || !v.is_number()) continue;
          if (v.is_number_float() && !std::isfinite(v.get<double>())) continue;
          os << x->dump() << ' ' << v.dump() << ' ' << k << '\n';
        }
      }
      break;
    }
  }
  return os.str();
}

std::filesystem::path emit_report(const Report& r, ReportFormat f, const std::filesystem::path& dir) {
  const std::string text = render_report(r, f);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path path =
      dir / (r.name + (r.config_hash.empty() ? "" : "-" + r.config_hash) + "." + kExtensions[static_cast<int>(f)]);
  std::ofstream os(path, std::ios::binary);
  if (!os || !(os << text) || !os.flush()) throw std::runtime_error("cannot write " + path.string());
  return path;
}

}  // namespace mhdlab
