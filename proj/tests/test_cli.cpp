#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <unistd.h>

#include "compacton/commands.hpp"
#include "compacton/io.hpp"
#include "doctest.h"

using namespace compacton;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("compacton_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string small_config(const fs::path& out, const std::string& extra_run = "", const std::string& m = "2") {
  return "[equation]\nm = " + m + "\nn = 2\n[grid]\nx_left = -25.132741228718345\nx_right = 25.132741228718345\n"
         "cells = 40\npoly_order = 3\n[ic]\nkind = cos_cubed_bump\n[run]\nt_end = 0.2\nsnapshot_times = 0.1, 0.2\n"
         "diagnostics_stride = 200\n" + extra_run + "[output]\ndir = " + out.string() + "\n";
}

fs::path write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("simulate writes the four artifacts and a consistent manifest") {
  TempDir tmp;
  const auto out = tmp.path / "run";
  const auto cfg = write(tmp.path / "a.ini", small_config(out));
  std::ostringstream o, e;
  REQUIRE(cmd_simulate({cfg.string()}, {}, o, e) == kExitOk);
  for (const char* f : {"snapshots.csv", "diagnostics.csv", "events.json", "manifest.json"}) CHECK(fs::exists(out / f));

  const auto manifest = read_json(out / "manifest.json");
  CHECK(manifest["status"] == "completed");
  CHECK(manifest["version"] == std::string(version()));
  for (const auto& entry : manifest["outputs"]) {
    const fs::path file = out / entry["file"].get<std::string>();
    REQUIRE(fs::exists(file));
    const std::size_t rows = file.extension() == ".csv" ? count_csv_rows(file) : read_json(file).size();
    CHECK(rows == entry["rows"].get<std::size_t>());
  }
  CHECK(config_from_json(manifest["config"]) == parse_config_file(cfg));

  // snapshots ordered by (t, x), 3 snapshots of 40 x 4 nodes
  std::ifstream snaps(out / "snapshots.csv");
  std::string line;
  std::getline(snaps, line);
  CHECK(line == "t,cell,node,x,u");
  double pt = -1, px = -1e300;
  std::size_t n = 0;
  while (std::getline(snaps, line)) {
    double t, x;
    int cell, node;
    char c;
    std::istringstream ls(line);
    ls >> t >> c >> cell >> c >> node >> c >> x;
    CHECK((t > pt || (t == pt && x > px)));
    pt = t;
    px = x;
    ++n;
  }
  CHECK(n == 3 * 160);
  const auto diag = slurp(out / "diagnostics.csv");
  CHECK(diag.substr(0, diag.find('\n')) == diagnostics_csv_header());
}

TEST_CASE("simulate is byte-reproducible") {
  TempDir tmp;
  std::ostringstream o, e;
  const auto a = write(tmp.path / "a.ini", small_config(tmp.path / "a"));
  const auto b = write(tmp.path / "b.ini", small_config(tmp.path / "b"));
  REQUIRE(cmd_simulate({a.string()}, {}, o, e) == kExitOk);
  REQUIRE(cmd_simulate({b.string()}, {}, o, e) == kExitOk);
  for (const char* f : {"snapshots.csv", "diagnostics.csv", "events.json"}) {
    CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
  }
}

TEST_CASE("simulate exit codes") {
  TempDir tmp;
  std::ostringstream o, e;
  const auto bad = write(tmp.path / "bad.ini", small_config(tmp.path / "bad", "", "1.5"));
  CHECK(cmd_simulate({bad.string()}, {}, o, e) == kExitConfig);

  const auto unknown = write(tmp.path / "unk.ini", small_config(tmp.path / "unk", "speed = 3\n"));
  std::ostringstream e2;
  CHECK(cmd_simulate({unknown.string()}, {}, o, e2) == kExitConfig);
  CHECK(e2.str().find("run.speed") != std::string::npos);

  const auto blow = write(tmp.path / "blow.ini", small_config(tmp.path / "blow", "cfl = 0.5\n"));
  CHECK(cmd_simulate({blow.string()}, {}, o, e) == kExitBlowup);
  const auto events = read_json(tmp.path / "blow" / "events.json");
  REQUIRE_FALSE(events.empty());
  CHECK(events.back()["kind"] == "blowup");
  CHECK(read_json(tmp.path / "blow" / "manifest.json")["status"] == "blowup");

  CHECK(cmd_simulate({(tmp.path / "missing.ini").string()}, {}, o, e) == kExitConfig);
}

TEST_CASE("sweep runs configs concurrently into separate directories") {
  TempDir tmp;
  std::vector<std::string> cfgs;
  for (const char* name : {"s1", "s2", "s3"}) {
    cfgs.push_back(write(tmp.path / (std::string(name) + ".ini"), small_config("ignored")).string());
  }
  CommandOptions opt;
  opt.jobs = 3;
  opt.out_dir = tmp.path / "sweep";
  std::ostringstream o, e;
  CHECK(cmd_simulate(cfgs, opt, o, e) == kExitOk);
  for (const char* name : {"s1", "s2", "s3"}) CHECK(fs::exists(tmp.path / "sweep" / name / "manifest.json"));
  CHECK(slurp(tmp.path / "sweep" / "s1" / "snapshots.csv") == slurp(tmp.path / "sweep" / "s3" / "snapshots.csv"));

  // two runs may not share an output directory
  CommandOptions clash;
  CHECK(cmd_simulate({cfgs[0], cfgs[1]}, clash, o, e) == kExitConfig);
}

TEST_CASE("bounds command") {
  TempDir tmp;
  std::ostringstream o, e;
  CommandOptions opt;
  opt.out_dir = tmp.path / "b1";
  REQUIRE(cmd_bounds("paper-fig1", opt, o, e) == kExitOk);
  auto j = read_json(tmp.path / "b1" / "bounds.json");
  CHECK(j["T1"].get<double>() == doctest::Approx(37.01).epsilon(5e-3));
  CHECK(j["T2"].is_null());
  CHECK(o.str().find("T1 = 37.01") != std::string::npos);

  opt.out_dir = tmp.path / "b2";
  REQUIRE(cmd_bounds("paper-fig2", opt, o, e) == kExitOk);
  j = read_json(tmp.path / "b2" / "bounds.json");
  CHECK(j["T2"].get<double>() == doctest::Approx(25.77).epsilon(5e-3));
  CHECK(j["T2"].get<double>() < j["T1"].get<double>());

  const auto box = write(tmp.path / "box.ini",
                         "[equation]\nm = 2\nn = 2\n[grid]\nx_left = -3\nx_right = 4\ncells = 10\npoly_order = 3\n"
                         "[ic]\nkind = box\nx0 = 0\nx1 = 1\n[run]\nt_end = 1\n[output]\ndir = " +
                             (tmp.path / "box").string() + "\n");
  REQUIRE(cmd_bounds(box.string(), {}, o, e) == kExitOk);
  CHECK(read_json(tmp.path / "box" / "bounds.json")["T1"].get<double>() == doctest::Approx(0.5));

  const auto neg = write(tmp.path / "neg.ini",
                         "[equation]\nm = 2\nn = 2\n[grid]\nx_left = -3\nx_right = 4\ncells = 10\npoly_order = 3\n"
                         "[ic]\nkind = box\nx0 = 0\nx1 = 1\nheight = -1\n[run]\nt_end = 1\n[output]\ndir = " +
                             (tmp.path / "neg").string() + "\n");
  std::ostringstream e2;
  CHECK(cmd_bounds(neg.string(), {}, o, e2) == kExitConfig);
  CHECK(e2.str().find("u0(") != std::string::npos);
}

TEST_CASE("convergence command: degenerate and non-smooth data stay well-formed") {
  TempDir tmp;
  const std::string header =
      "[equation]\nm = 2\nn = 2\n[grid]\nx_left = 0\nx_right = 6.283185307179586\ncells = 4\npoly_order = 3\n";
  const auto cst = write(tmp.path / "c.ini", header + "[ic]\nkind = offset_cosine\noffset = 1.5\ncos_amplitude = 0\n"
                                                      "[run]\nt_end = 0.01\n[output]\ndir = " + (tmp.path / "c").string() + "\n");
  std::ostringstream o, e;
  REQUIRE(cmd_convergence(cst.string(), {}, o, e) == kExitOk);
  const auto csv = slurp(tmp.path / "c" / "convergence.csv");
  CHECK(csv.find("solution,L2,4,8,") != std::string::npos);
  CHECK(csv.find(",ok\n") == std::string::npos);  // nothing to measure: every row degenerate
  CHECK(count_csv_rows(tmp.path / "c" / "convergence.csv") ==
        read_json(tmp.path / "c" / "manifest.json")["outputs"][0]["rows"].get<std::size_t>());

  const auto bump = write(tmp.path / "b.ini",
                          "[equation]\nm = 2\nn = 2\n[grid]\nx_left = -25.132741228718345\nx_right = 25.132741228718345\n"
                          "cells = 10\npoly_order = 3\n[ic]\nkind = cos_cubed_bump\n[run]\nt_end = 0.05\n[output]\ndir = " +
                              (tmp.path / "b").string() + "\n");
  std::ostringstream e2;
  REQUIRE(cmd_convergence(bump.string(), {}, o, e2) == kExitOk);
  CHECK(e2.str().find("warning") != std::string::npos);
  CHECK(count_csv_rows(tmp.path / "b" / "convergence.csv") == 8);
}

TEST_CASE("smooth data converge at high order on a small ladder") {
  SimulationConfig c;
  c.grid = {0.0, 2 * std::numbers::pi, 8, 3, 5};
  c.ic.kind = "offset_cosine";
  c.run.t_end = 0.02;
  const auto rep = convergence_study(c);
  const auto* l2 = rep.find("solution", "L2");
  REQUIRE(l2);
  CHECK(l2->status == "ok");
  CHECK(l2->order >= 2.5);
  CHECK(rep.find("functional", "I1")->status == "degenerate");
  REQUIRE(rep.find("rhs_consistency", "cell_average"));
  CHECK(rep.find("rhs_consistency", "cell_average")->order >= 1.8);  // pre-asymptotic on 8/16/32
}

TEST_CASE("recipe command prints parseable config") {
  std::ostringstream o, e;
  REQUIRE(cmd_recipe("paper-fig2", o, e) == kExitOk);
  CHECK(parse_config_text(o.str()) == *recipe("paper-fig2"));
  CHECK(cmd_recipe("nope", o, e) == kExitConfig);
}

TEST_CASE("events JSON round-trips") {
  const EventLog log{{1.5, EventKind::SupportBreach, "x"}, {2.0, EventKind::Blowup, "y"}};
  CHECK(events_from_json(to_json(log)).size() == 2);
  CHECK(events_from_json(to_json(log))[1].kind == EventKind::Blowup);
  CHECK(event_kind_from_string("regularity_loss") == EventKind::RegularityLoss);
  CHECK(format_double(0.1) == "0.10000000000000001");
}
