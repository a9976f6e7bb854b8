#include "report.hpp"

#include <cstdio>
#include <fstream>

#include "kahlerq/version.hpp"

namespace kahlerq::cli {

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

json build_report(const json& config_echo, const std::vector<CheckResult>& checks,
                  const json& results, double wall_time_ms) {
  json check_list = json::array();
  for (const auto& c : checks) {
    check_list.push_back({{"name", c.name},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
  }
  return json{{"artifact_version", kVersion},
              {"config_echo", config_echo},
              {"checks", check_list},
              {"pass", all_pass(checks)},
              {"results", results},
              {"wall_time_ms", wall_time_ms}};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw KahlerError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw KahlerError("write failed: " + path.string());
}

void write_report(const std::filesystem::path& out_dir, const json& report) {
  write_text_file(out_dir / "report.json", report.dump(2) + "\n");
}

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_num(row[i]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace kahlerq::cli
