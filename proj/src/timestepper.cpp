#include "compacton/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "compacton/error.hpp"

namespace compacton {

double stable_dispersive_cfl(int poly_order) {
  // SSP-RK3 reaches sqrt(3) on the imaginary axis.
  const double growth = (poly_order + 1.0) * (poly_order + 2.0);
  return 0.85 * std::sqrt(3.0) / (growth * growth * growth);
}

void RunConfig::validate() const {
  if (!spec.is_kmn()) throw ConfigError("time evolution supports K(m,n) (a = 0) only");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(breach_threshold > 0.0)) throw ConfigError("breach_threshold must be > 0");
  if (!(jump_threshold > 0.0)) throw ConfigError("jump_threshold must be > 0");
  if (diagnostics_stride < 1) throw ConfigError("diagnostics_stride must be >= 1");
  if (!(dt_collapse_ratio > 0.0 && dt_collapse_ratio < 1.0)) throw ConfigError("dt_collapse_ratio must lie in (0, 1)");
  if (grid.cells < 1 || grid.poly_order < 1 || grid.quad_order < grid.poly_order + 1 ||
      !(grid.x_right > grid.x_left)) {
    throw ConfigError("invalid grid: need cells >= 1, P >= 1, Q >= P+1, x_right > x_left");
  }
}

double cfl_dt(const LdgOperator& op, const GridFunction& u, double cfl, double max_dt) {
  constexpr double eps = 1e-14;
  const WaveSpeeds s = op.max_wave_speeds(u);
  const double dx = op.grid().dx();
  const double dt = cfl * std::min(dx / std::max(s.conv, eps), dx * dx * dx / std::max(s.disp, eps));
  return std::min(dt, max_dt);
}

SimState step(const LdgOperator& op, SimState state, double dt) {
  if (state.blown_up) return state;
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const auto& grid = op.grid_ptr();
  GridFunction k(grid), stage1(grid), stage2(grid);
  auto u = state.u.values();
  auto s1 = stage1.values();
  auto s2 = stage2.values();
  auto kv = k.values();
  const std::size_t size = u.size();
  try {
    op.rhs(state.u, k);
    for (std::size_t i = 0; i < size; ++i) s1[i] = u[i] + dt * kv[i];
    op.rhs(stage1, k);
    for (std::size_t i = 0; i < size; ++i) s2[i] = u[i] + 0.25 * (s1[i] - u[i] + dt * kv[i]);
    op.rhs(stage2, k);
    // u/3 + 2/3 (s2 + dt k) written as an increment so the weights sum to exactly one
    GridFunction next = state.u;
    auto nv = next.values();
    for (std::size_t i = 0; i < size; ++i) nv[i] = u[i] + (2.0 / 3.0) * (s2[i] - u[i] + dt * kv[i]);
    if (!next.all_finite()) throw NonFiniteError("non-finite values after SSP-RK3 update");
    state.u = std::move(next);
  } catch (const NonFiniteError& e) {
    state.blown_up = true;
    state.events.push_back({state.t, EventKind::Blowup, e.what()});
    return state;
  }
  state.t += dt;
  state.step += 1;
  return state;
}

namespace {

std::vector<double> schedule(const RunConfig& config) {
  std::vector<double> times;
  for (double t : config.snapshot_times) {
    if (t > 0.0 && t <= config.t_end) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

// Largest |u| at nodes outside [x0 - dx, x1 + dx].
class SupportMonitor {
 public:
  SupportMonitor(const PeriodicGrid& grid, const InitialCondition& ic) {
    const double lo = ic.x0 - grid.dx();
    const double hi = ic.x1 + grid.dx();
    if (lo <= grid.x_left() && hi >= grid.x_right()) return;
    for (int j = 0; j < grid.num_cells(); ++j) {
      for (int i = 0; i < grid.nodes_per_cell(); ++i) {
        const double x = grid.node_x(j, i);
        if (x < lo || x > hi) outside_.push_back(static_cast<std::size_t>(j) * grid.nodes_per_cell() + i);
      }
    }
  }

  bool active() const { return !outside_.empty(); }

  std::pair<double, std::size_t> max_outside(const GridFunction& u) const {
    const auto v = u.values();
    double best = 0.0;
    std::size_t where = 0;
    for (std::size_t idx : outside_) {
      if (std::abs(v[idx]) > best) {
        best = std::abs(v[idx]);
        where = idx;
      }
    }
    return {best, where};
  }

 private:
  std::vector<std::size_t> outside_;
};

}  // namespace

RunResult run(const RunConfig& config, const ProgressFn& progress) {
  config.validate();
  const GridPtr grid = config.grid.make();
  const LdgOperator op(config.spec, grid, config.flux);
  const InitialCondition& ic = config.ic;

  SimState state{project(grid, [&ic](double x) { return eval_initial(ic, x); }), 0.0, 0, {}, false};
  RunResult result;
  result.initial_peak = state.u.max_abs();
  const double breach_abs = config.breach_threshold * result.initial_peak;
  const DiagnosticThresholds thresholds{breach_abs};
  const SupportMonitor monitor(*grid, ic);
  bool breached = false;
  bool irregular = false;

  const auto take_record = [&](const SimState& s) {
    if (!result.diagnostics.empty() && result.diagnostics.back().t == s.t) return;
    result.diagnostics.push_back(record(config.spec, s.u, s.t, thresholds));
    const auto& r = result.diagnostics.back();
    if (!irregular && r.max_jump2 > config.jump_threshold) {
      irregular = true;
      std::ostringstream os;
      os.precision(17);
      os << "max second-derivative jump " << r.max_jump2 << " > " << config.jump_threshold;
      state.events.push_back({s.t, EventKind::RegularityLoss, os.str()});
    }
  };
  const auto check_breach = [&](const SimState& s) {
    if (breached || !monitor.active()) return;
    const auto [value, idx] = monitor.max_outside(s.u);
    if (value > breach_abs) {
      breached = true;
      const int n = grid->nodes_per_cell();
      std::ostringstream os;
      os.precision(17);
      os << "|u| = " << value << " at x = " << grid->node_x(static_cast<int>(idx / n), static_cast<int>(idx % n))
         << " exceeds " << breach_abs;
      state.events.push_back({s.t, EventKind::SupportBreach, os.str()});
    }
  };

  result.trajectory.push_back({0.0, state.u});
  take_record(state);

  const std::vector<double> stops = schedule(config);
  std::size_t next_stop = 0;
  const double dt_floor = config.dt_collapse_ratio * cfl_dt(op, state.u, config.cfl);
  while (state.t < config.t_end) {
    const double target = next_stop < stops.size() ? stops[next_stop] : config.t_end;
    const double dt_free = cfl_dt(op, state.u, config.cfl);
    if (dt_free < dt_floor) {
      std::ostringstream os;
      os.precision(17);
      os << "time step collapsed to " << dt_free << " (max |u| = " << state.u.max_abs() << ")";
      state.events.push_back({state.t, EventKind::Blowup, os.str()});
      state.blown_up = true;
      result.status = RunStatus::Blowup;
      break;
    }
    double dt = std::min(dt_free, target - state.t);
    // land exactly on the target instead of leaving a sliver step
    const bool lands = dt >= target - state.t;
    state = step(op, std::move(state), dt);
    if (state.blown_up) {
      result.status = RunStatus::Blowup;
      break;
    }
    if (lands) state.t = target;
    check_breach(state);
    const bool at_stop = next_stop < stops.size() && state.t == stops[next_stop];
    if (at_stop) {
      result.trajectory.push_back({state.t, state.u});
      ++next_stop;
    }
    if (at_stop || state.step % config.diagnostics_stride == 0 || state.t >= config.t_end) {
      take_record(state);
    }
    if (progress) progress(state);
  }
  result.events = std::move(state.events);
  result.t_final = state.t;
  result.steps = state.step;
  return result;
}

}  // namespace compacton
