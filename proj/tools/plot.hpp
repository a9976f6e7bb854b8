#pragma once

#include <filesystem>

namespace kahlerq::cli {

// Turn a run's report directory into gnuplot-ready two-column .dat files plus
// a plots.md index.  Returns 0; throws MissingReport when the directory holds
// no report.json (the CLI maps that to exit code 2).
int emit_plot_data(const std::filesystem::path& report_dir);

}  // namespace kahlerq::cli
