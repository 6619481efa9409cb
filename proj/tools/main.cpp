#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/config.hpp"
#include "cli/scenarios.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/parallel.hpp"

#ifndef SPINLAB_VERSION
#define SPINLAB_VERSION "0.0.0"
#endif

int main(int argc, char** argv) {
  using namespace spinlab;
  CLI::App app{"spinlab: spin and q system solvers with verification scenarios"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "cap on worker threads (0 = hardware default)")->check(CLI::NonNegativeNumber);

  std::string config_path;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run the scenario described by a JSON config");
  run->add_option("config", config_path, "config file")->required();
  run->add_flag("-q,--quiet", quiet, "only print the final verdict");
  auto* schema = app.add_subcommand("schema", "print the config schema with defaults");
  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (threads > 0) set_thread_count(threads);

  if (*version) {
    std::cout << "spinlab " << SPINLAB_VERSION << "\n";
    return 0;
  }
  if (*schema) {
    std::cout << cli::config_schema().dump(2) << "\n";
    return 0;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "config error: cannot read " << config_path << "\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();
  cli::ScenarioConfig cfg;
  try {
    cfg = cli::parse_config(text.str());
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << "config error: " << v << "\n";
    return 2;
  }
  try {
    const auto res = cli::run_scenario(cfg, quiet ? nullptr : &std::cout);
    std::cout << (res.any_fail() ? "FAIL" : "PASS") << "  " << cfg.scenario << "  (" << res.files.size()
              << " files, manifest in " << cfg.output_dir << ")\n";
    return res.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
