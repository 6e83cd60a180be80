#include "compacton/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "compacton/bounds.hpp"
#include "compacton/error.hpp"
#include "compacton/io.hpp"
#include "compacton/ldg.hpp"
#include "compacton/parallel.hpp"

namespace compacton {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Maps the exception taxonomy onto exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

ProgressFn throttled_progress(std::ostream& log, double t_end, const std::string& label) {
  auto last = std::make_shared<std::chrono::steady_clock::time_point>(std::chrono::steady_clock::now());
  return [&log, t_end, label, last](const SimState& s) {
    const auto now = std::chrono::steady_clock::now();
    if (now - *last < std::chrono::seconds(10)) return;
    *last = now;
    log << label << "t = " << s.t << " / " << t_end << "  step " << s.step << std::endl;
  };
}

nlohmann::json output_entry(const std::string& file, std::size_t rows) {
  return {{"file", file}, {"rows", rows}};
}

}  // namespace

SimulationConfig load_config(const std::string& path_or_recipe) {
  if (fs::exists(path_or_recipe)) return parse_config_file(path_or_recipe);
  if (auto r = recipe(path_or_recipe)) return *r;
  std::string names;
  for (const auto& n : recipe_names()) names += " " + n;
  throw ConfigError("'" + path_or_recipe + "' is neither a readable config file nor a recipe (" +
                    names.substr(1) + ")");
}

int simulate(const SimulationConfig& config, std::ostream& out, std::ostream& log, bool progress) {
  const std::string started = utc_timestamp();
  const RunConfig rc = config.to_run_config();
  const RunResult result =
      run(rc, progress ? throttled_progress(log, rc.t_end, config.output_dir + ": ") : ProgressFn{});
  const fs::path dir = config.output_dir;
  fs::create_directories(dir);

  const std::size_t snap_rows = write_snapshots_csv(dir / "snapshots.csv", result.trajectory);
  const std::size_t diag_rows = write_diagnostics_csv(dir / "diagnostics.csv", result.diagnostics);
  const std::size_t event_rows = write_events_json(dir / "events.json", result.events);

  const bool blown = result.status == RunStatus::Blowup;
  nlohmann::json manifest{
      {"program", "compacton_lab"},
      {"version", std::string(version())},
      {"command", "simulate"},
      {"config", to_json(config)},
      {"resolved_cfl", rc.cfl},
      {"threads", max_threads()},
      {"start_time", started},
      {"end_time", utc_timestamp()},
      {"status", blown ? "blowup" : "completed"},
      {"t_final", result.t_final},
      {"steps", result.steps},
      {"initial_peak", result.initial_peak},
      {"events", to_json(result.events)},
      {"outputs",
       {output_entry("snapshots.csv", snap_rows), output_entry("diagnostics.csv", diag_rows),
        output_entry("events.json", event_rows)}}};
  write_json(dir / "manifest.json", manifest);

  out << config.output_dir << ": " << (blown ? "blowup" : "completed") << " at t = "
      << result.t_final << " after " << result.steps << " steps";
  for (const auto& e : result.events) out << "; " << to_string(e.kind) << " at t = " << e.t;
  out << '\n';
  return blown ? kExitBlowup : kExitOk;
}

int cmd_simulate(const std::vector<std::string>& configs, const CommandOptions& options,
                 std::ostream& out, std::ostream& err) {
  if (configs.empty()) {
    err << "config error: no config given\n";
    return kExitConfig;
  }
  std::vector<SimulationConfig> loaded;
  const int load_status = guarded(err, [&] {
    configure_threads();
    std::set<std::string> dirs;
    for (const auto& c : configs) {
      SimulationConfig cfg = load_config(c);
      if (options.out_dir) {
        cfg.output_dir = configs.size() == 1
                             ? options.out_dir->string()
                             : (*options.out_dir / fs::path(c).stem()).string();
      }
      if (!dirs.insert(fs::weakly_canonical(cfg.output_dir).string()).second) {
        throw ConfigError("output directory '" + cfg.output_dir + "' is used by two runs");
      }
      loaded.push_back(std::move(cfg));
    }
    return kExitOk;
  });
  if (load_status != kExitOk) return load_status;

  std::vector<int> codes(loaded.size(), kExitOk);
  std::mutex io_mutex;
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < loaded.size(); i = next++) {
      std::ostringstream o, e;
      codes[i] = guarded(e, [&] { return simulate(loaded[i], o, err, options.progress); });
      const std::lock_guard lock(io_mutex);
      out << o.str();
      err << e.str();
    }
  };
  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(loaded.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return *std::max_element(codes.begin(), codes.end());
}

int cmd_bounds(const std::string& config, const CommandOptions& options, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    SimulationConfig cfg = load_config(config);
    if (options.out_dir) cfg.output_dir = options.out_dir->string();
    const EquationSpec spec = cfg.equation();
    const InitialCondition ic = make_initial(cfg.ic, cfg.grid);
    const BoundsReport report = compute_bounds(spec, ic, {cfg.grid.x_left, cfg.grid.x_right});

    nlohmann::json j = to_json(report);
    j["equation"] = {{"m", cfg.m}, {"n", cfg.n}, {"omega", spec.omega()}};
    j["ic"] = to_json(cfg)["ic"];
    fs::create_directories(cfg.output_dir);
    write_json(fs::path(cfg.output_dir) / "bounds.json", j);

    std::ostringstream line;
    line.precision(6);
    line << spec.name() << ": T1 = " << report.T1;
    if (report.T2) line << ", T2 = " << *report.T2;
    line << ", T3 = " << report.T3 << ", floor = " << report.floor << ", support = [" << report.x0
         << ", " << report.x1 << "]";
    out << line.str() << '\n';
    return kExitOk;
  });
}

const ConvergenceRow* ConvergenceReport::find(const std::string& kind,
                                              const std::string& quantity) const {
  const ConvergenceRow* best = nullptr;
  for (const auto& r : rows) {
    if (r.kind == kind && r.quantity == quantity && (!best || r.cells_fine > best->cells_fine)) {
      best = &r;
    }
  }
  return best;
}

namespace {

// Exact -(u^m)_x - (u^n)_xxx for u = a + b cos(k x).
double exact_rhs_offset_cosine(double m, double n, double a, double b, double k, double x) {
  const double c = std::cos(k * x), s = std::sin(k * x);
  const double u = a + b * c;
  const double u1 = -b * k * s, u2 = -b * k * k * c, u3 = b * k * k * k * s;
  const double dm = m * std::pow(u, m - 1.0) * u1;
  const double dn3 = n * (n - 1.0) * (n - 2.0) * std::pow(u, n - 3.0) * u1 * u1 * u1 +
                     3.0 * n * (n - 1.0) * std::pow(u, n - 2.0) * u1 * u2 +
                     n * std::pow(u, n - 1.0) * u3;
  return -dm - dn3;
}

// L2 and max differences between two levels, sampled on the finer grid's quadrature points.
std::pair<double, double> level_difference(const GridFunction& coarse, const GridFunction& fine) {
  const auto& g = fine.grid();
  const auto& ref = g.reference();
  const int nq = ref.num_quad();
  const int np = ref.num_nodes();
  double l2 = 0.0, linf = 0.0;
  for (int j = 0; j < g.num_cells(); ++j) {
    const auto cell = fine.cell(j);
    for (int q = 0; q < nq; ++q) {
      double vf = 0.0;
      for (int i = 0; i < np; ++i) vf += ref.interp()[q * np + i] * cell[i];
      const double diff = coarse.evaluate(g.quad_x(j, q)) - vf;
      l2 += ref.quad_weights()[q] * 0.5 * g.dx() * diff * diff;
      linf = std::max(linf, std::abs(diff));
    }
  }
  return {std::sqrt(l2), linf};
}

// Errors at or below `floor` are round-off: nothing to measure.
ConvergenceRow make_row(std::string kind, std::string quantity, int kc, int kf, double ec,
                        double ef, double floor) {
  ConvergenceRow r{std::move(kind), std::move(quantity), kc, kf, ec, ef, kNaN, "ok"};
  if (!std::isfinite(ec) || !std::isfinite(ef)) {
    r.status = "blowup";
  } else if (ec <= floor || ef <= floor) {
    r.status = "degenerate";
  } else {
    r.order = std::log2(ec / ef);
  }
  return r;
}

}  // namespace

ConvergenceReport convergence_study(const SimulationConfig& config, std::ostream* log) {
  ConvergenceReport report;
  report.smooth = is_smooth(config.ic);
  const int k0 = config.grid.cells;
  report.cells = {k0, 2 * k0, 4 * k0};

  std::vector<GridFunction> finals;
  std::vector<DiagnosticsRecord> last;
  bool blown = false;
  for (const int k : report.cells) {
    SimulationConfig level = config;
    level.grid.cells = k;
    RunConfig rc = level.to_run_config();
    rc.snapshot_times = {rc.t_end};
    rc.diagnostics_stride = std::numeric_limits<int>::max();
    const auto started = std::chrono::steady_clock::now();
    RunResult res = run(rc);
    if (log) {
      *log << "level K = " << k << ": " << res.steps << " steps, "
           << std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()
           << " s" << std::endl;
    }
    if (res.status == RunStatus::Blowup) {
      blown = true;
      break;
    }
    finals.push_back(res.trajectory.back().u);
    last.push_back(res.diagnostics.back());
  }

  const int kc = report.cells[0], km = report.cells[1];
  if (blown) {
    for (const char* q : {"L2", "Linf"}) report.rows.push_back(make_row("solution", q, kc, km, kNaN, kNaN, 0.0));
  } else {
    const double floor = 1e-11 * std::max(1.0, finals.back().max_abs());
    const auto [l2c, infc] = level_difference(finals[0], finals[1]);
    const auto [l2f, inff] = level_difference(finals[1], finals[2]);
    report.rows.push_back(make_row("solution", "L2", kc, km, l2c, l2f, floor));
    report.rows.push_back(make_row("solution", "Linf", kc, km, infc, inff, floor));
    const auto functional = [&](const char* name, double DiagnosticsRecord::*field) {
      const double a = last[0].*field, b = last[1].*field, c = last[2].*field;
      report.rows.push_back(make_row("functional", name, kc, km, std::abs(a - b), std::abs(b - c),
                                     1e-11 * std::max(1.0, std::abs(c))));
    };
    functional("I1", &DiagnosticsRecord::I1);
    functional("I_omega", &DiagnosticsRecord::I_omega);
    functional("hamiltonian", &DiagnosticsRecord::hamiltonian);
    functional("xmom", &DiagnosticsRecord::xmom);
    functional("conv_flux", &DiagnosticsRecord::conv_flux);
    functional("disp_mass", &DiagnosticsRecord::disp_mass);
  }

  if (config.ic.kind == "offset_cosine") {
    const EquationSpec spec = config.equation();
    const double a = config.ic.offset, b = config.ic.cos_amplitude, k = config.ic.wavenumber;
    // Nodal values of a third-derivative operator converge like h^(P-2);
    // cell averages (interface flux differences) one order faster.
    std::vector<double> nodal, averages;
    double scale = 0.0;
    // round-off of the dispersive chain on the finest grid, ~ eps ((P+1)(P+2)/dx)^3 n max|u|^n
    const int P = config.grid.poly_order;
    const double stiff = (P + 1) * (P + 2) * report.cells.back() / (config.grid.x_right - config.grid.x_left);
    const double rhs_floor =
        1e-14 * stiff * stiff * stiff * spec.n() * std::pow(std::abs(a) + std::abs(b), spec.n());
    for (const int cells : report.cells) {
      GridSpec gs = config.grid;
      gs.cells = cells;
      const GridPtr grid = gs.make();
      const LdgOperator op(spec, grid);
      const auto exact = [&](double x) { return exact_rhs_offset_cosine(spec.m(), spec.n(), a, b, k, x); };
      const GridFunction u = project(grid, [&](double x) { return a + b * std::cos(k * x); });
      const GridFunction r = op.rhs(u);
      const GridFunction pe = project(grid, exact);
      const auto& w = grid->reference().node_weights();
      double err = 0.0, avg_err = 0.0;
      for (int j = 0; j < grid->num_cells(); ++j) {
        double avg = 0.0;
        for (int i = 0; i < grid->nodes_per_cell(); ++i) {
          const double e = exact(grid->node_x(j, i));
          err = std::max(err, std::abs(r.at(j, i) - e));
          scale = std::max(scale, std::abs(e));
          avg += 0.5 * w[i] * (r.at(j, i) - pe.at(j, i));
        }
        avg_err = std::max(avg_err, std::abs(avg));
      }
      nodal.push_back(err);
      averages.push_back(avg_err);
    }
    for (int lvl = 0; lvl < 2; ++lvl) {
      report.rows.push_back(make_row("rhs_consistency", "Linf_nodal", report.cells[lvl],
                                     report.cells[lvl + 1], nodal[lvl], nodal[lvl + 1],
                                     std::max(rhs_floor, 1e-11 * scale)));
    }
    for (int lvl = 0; lvl < 2; ++lvl) {
      report.rows.push_back(make_row("rhs_consistency", "cell_average", report.cells[lvl],
                                     report.cells[lvl + 1], averages[lvl], averages[lvl + 1],
                                     std::max(rhs_floor, 1e-11 * scale)));
    }
  }
  return report;
}

std::size_t write_convergence_csv(const fs::path& path, const ConvergenceReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "kind,quantity,cells_coarse,cells_fine,err_coarse,err_fine,order,status\n";
  for (const auto& r : report.rows) {
    out << r.kind << ',' << r.quantity << ',' << r.cells_coarse << ',' << r.cells_fine << ','
        << format_double(r.err_coarse) << ',' << format_double(r.err_fine) << ','
        << format_double(r.order) << ',' << r.status << '\n';
  }
  return report.rows.size();
}

int cmd_convergence(const std::string& config, const CommandOptions& options, std::ostream& out,
                    std::ostream& err) {
  return guarded(err, [&] {
    configure_threads();
    SimulationConfig cfg = load_config(config);
    if (options.out_dir) cfg.output_dir = options.out_dir->string();
    (void)cfg.to_run_config();  // validate before the long runs
    if (!is_smooth(cfg.ic)) {
      err << "warning: initial condition '" << cfg.ic.kind
          << "' is not smooth; measured orders are limited by its regularity\n";
    }
    const std::string started = utc_timestamp();
    const ConvergenceReport report = convergence_study(cfg, options.progress ? &err : nullptr);
    fs::create_directories(cfg.output_dir);
    const std::size_t rows = write_convergence_csv(fs::path(cfg.output_dir) / "convergence.csv", report);
    write_json(fs::path(cfg.output_dir) / "manifest.json",
               {{"program", "compacton_lab"},
                {"version", std::string(version())},
                {"command", "convergence"},
                {"config", to_json(cfg)},
                {"ladder", report.cells},
                {"smooth_initial_condition", report.smooth},
                {"start_time", started},
                {"end_time", utc_timestamp()},
                {"outputs", {output_entry("convergence.csv", rows)}}});
    bool blown = false;
    for (const auto& r : report.rows) {
      out << r.kind << ' ' << r.quantity << " K=" << r.cells_coarse << "->" << r.cells_fine
          << ": order " << r.order << " (" << r.status << ")\n";
      blown = blown || r.status == "blowup";
    }
    return blown ? kExitBlowup : kExitOk;
  });
}

int cmd_recipe(const std::string& name, std::ostream& out, std::ostream& err) {
  if (auto r = recipe(name)) {
    out << to_config_text(*r);
    return kExitOk;
  }
  err << "config error: unknown recipe '" << name << "'\n";
  return kExitConfig;
}

}  // namespace compacton
