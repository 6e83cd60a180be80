#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "compacton/equations.hpp"
#include "compacton/ldg.hpp"
#include "compacton/timestepper.hpp"

namespace compacton {

/// Serializable description of an initial condition ([ic] section).
struct IcSpec {
  std::string kind = "cos_cubed_bump";  // cos_cubed_bump | box | compacton | offset_cosine | table
  double scale = 1.0;                   // cos_cubed_bump
  double x0 = 0.0, x1 = 1.0, height = 1.0;  // box
  std::string solution = "K22";         // compacton: K22 | C211 | C431 | K3half
  double lambda = 1.0;
  double amplitude = 1.0;               // C431
  std::string branch = "compacton";     // K22: compacton | anticompacton
  double offset = 2.0, cos_amplitude = 1.0, wavenumber = 1.0;  // offset_cosine
  std::string file;                     // table: two-column CSV "x,u"

  bool operator==(const IcSpec&) const = default;
};

struct RunParams {
  double t_end = 1.0;
  std::optional<double> cfl;  // defaults to stable_dispersive_cfl(P)
  std::vector<double> snapshot_times;
  double breach_threshold = 1e-4;
  double jump_threshold = 0.1;
  int diagnostics_stride = 1000;
  std::string flux = "global";  // global | local

  bool operator==(const RunParams&) const = default;
};

/// Fully resolved contents of a config file.
struct SimulationConfig {
  double m = 2.0;
  double n = 2.0;
  GridSpec grid{};
  IcSpec ic{};
  RunParams run{};
  std::string output_dir = "out";

  bool operator==(const SimulationConfig&) const = default;

  EquationSpec equation() const { return make_kmn(m, n); }
  /// Builds the runtime configuration; throws ConfigError/DomainError.
  RunConfig to_run_config() const;
};

InitialCondition make_initial(const IcSpec& ic, const GridSpec& grid);
/// Smooth data (analytic edges of order >= 3 or no edges) for the convergence study.
bool is_smooth(const IcSpec& ic);

/// Parses the INI-style text with sections [equation] [grid] [ic] [run] [output].
/// Unknown sections or keys raise ConfigError naming the offending key.
SimulationConfig parse_config_text(const std::string& text);
SimulationConfig parse_config_file(const std::filesystem::path& path);

/// INI text that parses back to the same config.
std::string to_config_text(const SimulationConfig& config);

nlohmann::json to_json(const SimulationConfig& config);
SimulationConfig config_from_json(const nlohmann::json& j);

/// Built-in recipes: paper-fig1 (K(2,2)) and paper-fig2 (K(3,2)).
std::optional<SimulationConfig> recipe(const std::string& name);
std::vector<std::string> recipe_names();

}  // namespace compacton
