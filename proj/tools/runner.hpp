#pragma once

#include <cstdint>
#include <filesystem>

namespace kahlerq::cli {

struct RunOptions {
  std::filesystem::path out_dir;  // empty: config's output_dir, else <config-stem>_out
  int threads = 1;
  std::uint64_t budget = 0;  // 0: take KAHLERQ_BUDGET env or the built-in default
};

// Reads KAHLERQ_BUDGET; falls back to the built-in default.  Throws
// ConfigError on an unparsable value.
std::uint64_t budget_from_env();

// Exit codes: 0 all checks pass, 1 check failure (report still written),
// 2 config error, 3 budget exceeded.
int run_config(const std::filesystem::path& config_path, RunOptions opt);

}  // namespace kahlerq::cli
