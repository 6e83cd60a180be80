#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "compacton/diagnostics.hpp"
#include "compacton/equations.hpp"
#include "compacton/events.hpp"
#include "compacton/grid.hpp"
#include "compacton/ldg.hpp"

namespace compacton {

struct SimState {
  GridFunction u;
  double t = 0.0;
  long step = 0;
  EventLog events;
  bool blown_up = false;
};

struct GridSpec {
  double x_left = 0.0;
  double x_right = 1.0;
  int cells = 100;
  int poly_order = 3;
  int quad_order = 5;

  GridPtr make() const { return make_grid(x_left, x_right, cells, poly_order, quad_order); }
  bool operator==(const GridSpec&) const = default;
};

/// Largest stable multiplier of dx^3 / max n|u|^(n-1) for SSP-RK3 applied to
/// the degree-P dispersive operator, whose spectral radius grows like
/// ((P+1)(P+2)/dx)^3.  Keeps a 15% margin.
double stable_dispersive_cfl(int poly_order);

struct RunConfig {
  EquationSpec spec = make_kmn(2, 2);
  GridSpec grid{};
  InitialCondition ic = cos_cubed_bump();
  double t_end = 1.0;
  double cfl = stable_dispersive_cfl(3);
  std::vector<double> snapshot_times;
  double breach_threshold = 1e-4;  // relative to max |u0|
  double jump_threshold = 0.1;    // absolute, second-derivative interface jump
  int diagnostics_stride = 1000;
  // A step shorter than this fraction of the first step means |u| has run
  // away; logged as blowup since the adaptive step never reaches NaN.
  double dt_collapse_ratio = 1e-3;
  FluxConstant flux = FluxConstant::GlobalLaxFriedrichs;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

/// cfl * min(dx / conv, dx^3 / disp), floors guarded by 1e-14, capped by max_dt.
double cfl_dt(const LdgOperator& op, const GridFunction& u, double cfl,
              double max_dt = std::numeric_limits<double>::infinity());

/// One SSP-RK3 step.  Non-finite stages freeze the state and log a blowup.
SimState step(const LdgOperator& op, SimState state, double dt);

struct Snapshot {
  double t = 0.0;
  GridFunction u;
};

enum class RunStatus { Completed, Blowup };

struct RunResult {
  std::vector<Snapshot> trajectory;
  std::vector<DiagnosticsRecord> diagnostics;
  EventLog events;
  RunStatus status = RunStatus::Completed;
  double t_final = 0.0;
  long steps = 0;
  double initial_peak = 0.0;
};

using ProgressFn = std::function<void(const SimState&)>;

/// Integrates to t_end (or the first blowup or time-step collapse), landing exactly on snapshot
/// times, recording diagnostics every stride steps and at each snapshot, and
/// logging support_breach / regularity_loss events the first time they occur.
RunResult run(const RunConfig& config, const ProgressFn& progress = {});

}  // namespace compacton
