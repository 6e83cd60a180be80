#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "compacton/commands.hpp"

int main(int argc, char** argv) {
  using namespace compacton;
  CLI::App app{"compacton_lab: LDG simulation and lifespan bounds for K(m,n) equations"};
  app.set_version_flag("--version", std::string(COMPACTON_VERSION));
  app.require_subcommand(1);

  CommandOptions options;
  std::vector<std::string> configs;
  std::string config;
  std::string out_dir;

  auto* sim = app.add_subcommand("simulate", "Evolve a config (or recipe name); several configs form a sweep");
  sim->add_option("config", configs, "Config file(s) or recipe name(s)")->required();
  sim->add_option("--out", out_dir, "Output directory (per-config subdirectories in a sweep)");
  sim->add_option("-j,--jobs", options.jobs, "Concurrent runs in a sweep")->check(CLI::PositiveNumber);
  sim->add_flag("--progress", options.progress, "Print progress every 10 s");

  auto* bnd = app.add_subcommand("bounds", "Lifespan bounds T1, T2, T3 of the initial datum");
  bnd->add_option("config", config, "Config file or recipe name")->required();
  bnd->add_option("--out", out_dir, "Output directory");

  auto* conv = app.add_subcommand("convergence", "Self-convergence on the ladder K, 2K, 4K");
  conv->add_option("config", config, "Config file or recipe name")->required();
  conv->add_option("--out", out_dir, "Output directory");
  conv->add_flag("--progress", options.progress, "Report each refinement level");

  std::string recipe_name;
  auto* rec = app.add_subcommand("recipe", "Print a built-in recipe as config text");
  rec->add_option("name", recipe_name, "paper-fig1 | paper-fig2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!out_dir.empty()) options.out_dir = out_dir;

  if (*sim) return cmd_simulate(configs, options, std::cout, std::cerr);
  if (*bnd) return cmd_bounds(config, options, std::cout, std::cerr);
  if (*conv) return cmd_convergence(config, options, std::cout, std::cerr);
  return cmd_recipe(recipe_name, std::cout, std::cerr);
}
