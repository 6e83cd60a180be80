#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "compacton/config.hpp"
#include "compacton/timestepper.hpp"

namespace compacton {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O and other runtime failures
inline constexpr int kExitConfig = 2;   // invalid config or inadmissible initial datum
inline constexpr int kExitBlowup = 3;

/// A config file path, or the name of a built-in recipe when no such file exists.
SimulationConfig load_config(const std::string& path_or_recipe);

struct CommandOptions {
  std::optional<std::filesystem::path> out_dir;  // overrides [output] dir
  int jobs = 1;                                  // concurrent runs in sweep mode
  bool progress = false;                         // periodic progress lines on the log stream
};

/// Runs one simulation and writes snapshots.csv, diagnostics.csv, events.json
/// and manifest.json into config.output_dir.
int simulate(const SimulationConfig& config, std::ostream& out, std::ostream& log,
             bool progress = false);

/// One run per config; with several configs and jobs > 1 the runs execute
/// concurrently, each in its own output directory.  Returns the worst exit code.
int cmd_simulate(const std::vector<std::string>& configs, const CommandOptions& options,
                 std::ostream& out, std::ostream& err);

/// Writes bounds.json and prints a one-line summary.
int cmd_bounds(const std::string& config, const CommandOptions& options, std::ostream& out,
               std::ostream& err);

struct ConvergenceRow {
  std::string kind;      // solution | functional | rhs_consistency
  std::string quantity;  // L2, Linf, I1, ...
  int cells_coarse = 0;
  int cells_fine = 0;
  double err_coarse = 0.0;
  double err_fine = 0.0;
  double order = 0.0;  // log2(err_coarse / err_fine); NaN unless status == "ok"
  std::string status;  // ok | degenerate | blowup
};

struct ConvergenceReport {
  std::vector<int> cells;  // K, 2K, 4K
  bool smooth = true;
  std::vector<ConvergenceRow> rows;

  /// The row for (kind, quantity) on the finest pair.
  const ConvergenceRow* find(const std::string& kind, const std::string& quantity) const;
};

/// Self-convergence on the ladder K, 2K, 4K at t_end, plus rhs consistency
/// against the exact operator when the initial datum is an offset cosine.
ConvergenceReport convergence_study(const SimulationConfig& config, std::ostream* log = nullptr);

std::size_t write_convergence_csv(const std::filesystem::path& path,
                                  const ConvergenceReport& report);

int cmd_convergence(const std::string& config, const CommandOptions& options, std::ostream& out,
                    std::ostream& err);

/// Prints the INI text of a built-in recipe.
int cmd_recipe(const std::string& name, std::ostream& out, std::ostream& err);

}  // namespace compacton
