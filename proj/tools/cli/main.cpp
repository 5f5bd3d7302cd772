#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "app.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("shockline");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SHOCKLINE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int main(int argc, char** argv) {
  using shockline::cli::AppOptions;
  using shockline::cli::Verb;
  setup_logging();

  CLI::App app{"Blow-up criteria and simulations for the damped p-system"};
  app.require_subcommand(1);
  AppOptions opts;
  auto add_verb = [&](const char* name, const char* help, Verb verb) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "Scenario or sweep JSON file")->required();
    sub->add_option("--out", opts.out, "Output directory")->capture_default_str();
    sub->add_option("--jobs", opts.jobs, "Sweep worker threads (0: all cores)");
    sub->add_option("--seed", opts.seed, "Reserved; all presets are deterministic");
    sub->callback([&opts, verb] { opts.verb = verb; });
  };
  add_verb("check", "Evaluate the blow-up criteria on the initial data", Verb::kCheck);
  add_verb("simulate", "Evaluate criteria, simulate, and cross-check", Verb::kSimulate);
  add_verb("sweep", "Run a parameter sweep", Verb::kSweep);
  add_verb("validate", "Lint a scenario or sweep file", Verb::kValidate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : shockline::cli::kExitValidation;
  }
  return shockline::cli::run_app(opts, std::cout, std::cerr);
}
