#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json_util.hpp"

namespace kahlerq::cli {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_check(std::string name, double residual, double tolerance) {
  const bool pass = residual <= tolerance;
  return {std::move(name), residual, tolerance, pass};
}

bool all_pass(const std::vector<CheckResult>& checks);

// Assemble the RunReport object: config echo, ordered check list, results
// payload, version, timing.  Key order is alphabetical (nlohmann objects are
// sorted), so serialization is deterministic; wall_time_ms is the single
// nondeterministic field and comparisons must exclude it.
json build_report(const json& config_echo, const std::vector<CheckResult>& checks,
                  const json& results, double wall_time_ms);

void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_report(const std::filesystem::path& out_dir, const json& report);

// CSV helpers; numbers are printed with %.17g so values round-trip exactly.
std::string csv_num(double v);
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace kahlerq::cli
