#include "plot.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json_util.hpp"
#include "report.hpp"

namespace kahlerq::cli {

namespace {

namespace fs = std::filesystem;

std::vector<std::vector<double>> read_csv_rows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw KahlerError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {  // header
      first = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string two_column(const std::vector<std::pair<double, double>>& points) {
  std::string out;
  for (const auto& [a, b] : points) {
    out += csv_num(a);
    out += ' ';
    out += csv_num(b);
    out += '\n';
  }
  return out;
}

}  // namespace

int emit_plot_data(const fs::path& report_dir) {
  const fs::path report_path = report_dir / "report.json";
  if (!fs::exists(report_path)) {
    throw MissingReport("no report.json in " + report_dir.string());
  }
  json report;
  {
    std::ifstream in(report_path);
    report = json::parse(in);
  }
  const json results = report.value("results", json::object());

  std::string index = "# Plot data\n\n";
  int emitted = 0;

  // Ergodic runs: gap vs averaging window.
  const fs::path running_csv = report_dir / "running_average.csv";
  if (fs::exists(running_csv) && results.contains("torus_avg")) {
    const double torus = results.at("torus_avg").get<double>();
    std::vector<std::pair<double, double>> points;
    for (const auto& row : read_csv_rows(running_csv)) {
      if (row.size() >= 2) points.emplace_back(row[0], std::abs(row[1] - torus));
    }
    write_text_file(report_dir / "convergence.dat", two_column(points));
    index += "- `convergence.dat`: averaging window T vs |time_avg(T) - torus_avg|.\n"
             "  gnuplot: `plot 'convergence.dat' with lines`\n";
    ++emitted;
  }

  // Commutator runs: grid spacing vs residual (slope ~ stencil order in log-log).
  if (results.contains("residual_coarse") && results.contains("residual_fine")) {
    std::vector<std::pair<double, double>> points = {
        {results.at("h_fine").get<double>(), results.at("residual_fine").get<double>()},
        {results.at("h_coarse").get<double>(), results.at("residual_coarse").get<double>()}};
    write_text_file(report_dir / "order.dat", two_column(points));
    index += "- `order.dat`: grid spacing h vs commutator residual.\n"
             "  gnuplot: `set logscale xy; plot 'order.dat' with linespoints`\n";
    ++emitted;
  }

  // Evolve runs: energy drift along the trajectory.
  const fs::path traj_csv = report_dir / "trajectory.csv";
  if (fs::exists(traj_csv)) {
    const auto rows = read_csv_rows(traj_csv);
    if (!rows.empty() && rows.front().size() >= 3) {
      const std::size_t hsym_col = rows.front().size() - 2;  // t,q..,p..,hsym,gnorm
      const double h0 = rows.front()[hsym_col];
      std::vector<std::pair<double, double>> points;
      for (const auto& row : rows) points.emplace_back(row[0], std::abs(row[hsym_col] - h0));
      write_text_file(report_dir / "drift.dat", two_column(points));
      index += "- `drift.dat`: time vs |H_sym(t) - H_sym(0)|.\n"
               "  gnuplot: `plot 'drift.dat' with lines`\n";
      ++emitted;
    }
  }

  // Grid runs: the stored wavefunction is already plot-ready.
  if (fs::exists(report_dir / "wavefunction.csv")) {
    index += "- `wavefunction.csv`: x,q,p,|psi|^2 (plot directly: "
             "`plot 'wavefunction.csv' using 1:4 with lines`).\n";
    ++emitted;
  }

  if (emitted == 0) index += "(no plottable series in this report)\n";
  write_text_file(report_dir / "plots.md", index);
  std::cout << "wrote plot data for " << emitted << " series in " << report_dir.string() << "\n";
  return 0;
}

}  // namespace kahlerq::cli
