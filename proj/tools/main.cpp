#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kahlerq/errors.hpp"
#include "kahlerq/version.hpp"
#include "plot.hpp"
#include "runner.hpp"
#include "schema.hpp"

int main(int argc, char** argv) {
  CLI::App app{"kahlerq: quantum mechanics in real Kahler space - experiment runner"};
  app.set_version_flag("--version", std::string(kahlerq::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 1;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config, write report + CSVs");
  run->add_option("config", config_path, "JSON experiment config")->required();
  run->add_option("--out", out_dir, "Output directory (overrides config output_dir)");
  run->add_option("--threads", threads, "Worker threads (results are thread-count independent)")
      ->check(CLI::PositiveNumber);

  std::string report_dir;
  CLI::App* plot = app.add_subcommand("plot", "Emit gnuplot-ready .dat files for a report dir");
  plot->add_option("report_dir", report_dir, "Directory containing report.json")->required();

  CLI::App* schema = app.add_subcommand("schema", "Print the JSON config schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      kahlerq::cli::RunOptions opt;
      opt.out_dir = out_dir;
      opt.threads = threads;
      return kahlerq::cli::run_config(config_path, opt);
    }
    if (plot->parsed()) {
      return kahlerq::cli::emit_plot_data(report_dir);
    }
    if (schema->parsed()) {
      std::cout << kahlerq::cli::schema_text();
      return 0;
    }
  } catch (const kahlerq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const kahlerq::MissingReport& e) {
    std::cerr << "missing report: " << e.what() << "\n";
    return 2;
  } catch (const kahlerq::KahlerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
