// bricks: run the built-in examples or analyse a configured brick, set or measure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bricks/cli/run.hpp"

int main(int argc, char** argv) {
  using namespace bricks;
  using namespace bricks::cli;

  CLI::App app{"Bounded bricks, their radii and compactness, entropy bounds and moment checks"};
  std::string command = "examples";
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> levels;
  std::optional<double> tol;
  std::optional<std::string> out;
  app.add_option("command", command, "examples, radius, compact, entropy, net or measure")
      ->check(CLI::IsMember(commands()));
  app.add_option("--config", config_path, "INI file with [brick], [schedule], [run], [net], [entropy], [measure]");
  app.add_option("--seed", seed, "seed for sampled patterns and points (default 0)");
  app.add_option("--levels", levels, "truncation levels, comma separated")->delimiter(',');
  app.add_option("--tol", tol, "Cauchy tolerance for the truncation schedule");
  app.add_option("--out", out, "write the JSON report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  RunConfig cfg;
  try {
    if (config_path) {
      std::ifstream in(*config_path);
      if (!in) throw InvalidArgument("cannot read config file '" + *config_path + "'");
      load_ini(in, cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadConfig;
  }
  cfg.command = command;
  if (seed) cfg.seed = *seed;
  if (!levels.empty()) {
    if (command == "measure") {
      cfg.measure.levels = levels;
    } else {
      cfg.schedule.levels = levels;
    }
  }
  if (tol) cfg.schedule.cauchy_tol = *tol;
  cfg.output_path = out;
  return run(cfg, std::cout, std::cerr);
}
