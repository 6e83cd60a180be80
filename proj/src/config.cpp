#include "compacton/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "compacton/error.hpp"

namespace compacton {

namespace {

using std::numbers::pi;
namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& ic_keys_by_kind() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"cos_cubed_bump", {"kind", "scale"}},
      {"box", {"kind", "x0", "x1", "height"}},
      {"compacton", {"kind", "solution", "lambda", "amplitude", "branch"}},
      {"offset_cosine", {"kind", "offset", "cos_amplitude", "wavenumber"}},
      {"table", {"kind", "file"}},
  };
  return keys;
}

const std::map<std::string, std::set<std::string>>& section_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"equation", {"m", "n"}},
      {"grid", {"x_left", "x_right", "cells", "poly_order", "quad_order"}},
      {"run",
       {"t_end", "cfl", "snapshot_times", "breach_threshold", "jump_threshold",
        "diagnostics_stride", "flux"}},
      {"output", {"dir"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected a number, got '" + s + "'");
  }
}

int to_int(const std::string& key, const std::string& raw) {
  const double v = to_double(key, raw);
  if (std::floor(v) != v) throw ConfigError("key '" + key + "': expected an integer");
  return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(to_double(key, item));
  }
  return out;
}

// Flat view of the ini tree: "section.key" -> value, rejecting unknown entries.
class Entries {
 public:
  explicit Entries(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
      if (body.empty() && !body.data().empty()) {
        throw ConfigError("key '" + section + "' must be inside a section");
      }
      for (const auto& [key, value] : body) values_[section + "." + key] = value.data();
    }
    std::string kind = "cos_cubed_bump";
    if (auto it = values_.find("ic.kind"); it != values_.end()) kind = trim(it->second);
    const auto kinds = ic_keys_by_kind().find(kind);
    if (kinds == ic_keys_by_kind().end()) throw ConfigError("unknown ic kind '" + kind + "'");
    for (const auto& [full, _] : values_) {
      const auto dot = full.find('.');
      const std::string section = full.substr(0, dot);
      const std::string key = full.substr(dot + 1);
      if (section == "ic") {
        if (!kinds->second.contains(key)) {
          throw ConfigError("unknown key '" + full + "' for ic kind " + kind);
        }
        continue;
      }
      const auto sec = section_keys().find(section);
      if (sec == section_keys().end()) throw ConfigError("unknown section '[" + section + "]'");
      if (!sec->second.contains(key)) throw ConfigError("unknown key '" + full + "'");
    }
  }

  bool has(const std::string& key) const { return values_.contains(key); }

  const std::string& required(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
  }

  double number(const std::string& key) const { return to_double(key, required(key)); }
  double number(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

 private:
  std::map<std::string, std::string> values_;
};

// Shortest decimal that parses back to the same double.
std::string fmt(double v) {
  for (int digits = 15;; ++digits) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    if (digits == 17 || std::stod(os.str()) == v) return os.str();
  }
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s;
}

CompactonKind compacton_kind(const std::string& s) {
  if (s == "K22") return CompactonKind::K22;
  if (s == "C211") return CompactonKind::C211;
  if (s == "C431") return CompactonKind::C431Stationary;
  if (s == "K3half") return CompactonKind::K3Half;
  throw ConfigError("unknown compacton solution '" + s + "'");
}

InitialCondition load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read table file '" + path + "'");
  std::vector<double> xs, us;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("table line without comma: '" + line + "'");
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      us.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      if (xs.empty() && us.empty()) continue;  // header row
      throw ConfigError("bad number in table line '" + line + "'");
    }
  }
  return from_table(std::move(xs), std::move(us));
}

}  // namespace

InitialCondition make_initial(const IcSpec& ic, const GridSpec& grid) {
  if (ic.kind == "cos_cubed_bump") return cos_cubed_bump(ic.scale);
  if (ic.kind == "box") return box(ic.x0, ic.x1, ic.height);
  if (ic.kind == "compacton") {
    AnalyticSolution sol;
    sol.kind = compacton_kind(ic.solution);
    sol.lambda = ic.lambda;
    sol.amplitude = ic.amplitude;
    if (ic.branch == "anticompacton") {
      sol.branch = Branch::AntiCompacton;
    } else if (ic.branch != "compacton") {
      throw ConfigError("unknown compacton branch '" + ic.branch + "'");
    }
    return from_analytic(sol);
  }
  if (ic.kind == "offset_cosine") {
    const double a = ic.offset, b = ic.cos_amplitude, k = ic.wavenumber;
    return from_function([a, b, k](double x) { return a + b * std::cos(k * x); }, grid.x_left,
                         grid.x_right);
  }
  if (ic.kind == "table") return load_table(ic.file);
  throw ConfigError("unknown ic kind '" + ic.kind + "'");
}

bool is_smooth(const IcSpec& ic) { return ic.kind == "offset_cosine"; }

RunConfig SimulationConfig::to_run_config() const {
  RunConfig rc;
  rc.spec = equation();
  rc.grid = grid;
  rc.ic = make_initial(ic, grid);
  rc.t_end = run.t_end;
  rc.cfl = run.cfl.value_or(stable_dispersive_cfl(grid.poly_order));
  rc.snapshot_times = run.snapshot_times;
  rc.breach_threshold = run.breach_threshold;
  rc.jump_threshold = run.jump_threshold;
  rc.diagnostics_stride = run.diagnostics_stride;
  if (run.flux == "global") {
    rc.flux = FluxConstant::GlobalLaxFriedrichs;
  } else if (run.flux == "local") {
    rc.flux = FluxConstant::LocalLaxFriedrichs;
  } else {
    throw ConfigError("run.flux must be 'global' or 'local'");
  }
  rc.validate();
  return rc;
}

SimulationConfig parse_config_text(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  const Entries e(tree);
  SimulationConfig c;
  c.m = e.number("equation.m");
  c.n = e.number("equation.n");

  c.grid.x_left = e.number("grid.x_left");
  c.grid.x_right = e.number("grid.x_right");
  c.grid.cells = to_int("grid.cells", e.required("grid.cells"));
  c.grid.poly_order = to_int("grid.poly_order", e.required("grid.poly_order"));
  c.grid.quad_order = e.has("grid.quad_order") ? to_int("grid.quad_order", e.required("grid.quad_order"))
                                               : c.grid.poly_order + 2;

  c.ic.kind = trim(e.required("ic.kind"));
  if (c.ic.kind == "cos_cubed_bump") {
    c.ic.scale = e.number("ic.scale", 1.0);
  } else if (c.ic.kind == "box") {
    c.ic.x0 = e.number("ic.x0");
    c.ic.x1 = e.number("ic.x1");
    c.ic.height = e.number("ic.height", 1.0);
  } else if (c.ic.kind == "compacton") {
    c.ic.solution = trim(e.required("ic.solution"));
    c.ic.lambda = e.number("ic.lambda", 1.0);
    c.ic.amplitude = e.number("ic.amplitude", 1.0);
    c.ic.branch = e.has("ic.branch") ? trim(e.required("ic.branch")) : "compacton";
  } else if (c.ic.kind == "offset_cosine") {
    c.ic.offset = e.number("ic.offset");
    c.ic.cos_amplitude = e.number("ic.cos_amplitude");
    c.ic.wavenumber = e.number("ic.wavenumber", 1.0);
  } else if (c.ic.kind == "table") {
    c.ic.file = trim(e.required("ic.file"));
  }

  c.run.t_end = e.number("run.t_end");
  if (e.has("run.cfl")) c.run.cfl = e.number("run.cfl");
  if (e.has("run.snapshot_times")) {
    c.run.snapshot_times = to_list("run.snapshot_times", e.required("run.snapshot_times"));
  }
  c.run.breach_threshold = e.number("run.breach_threshold", c.run.breach_threshold);
  c.run.jump_threshold = e.number("run.jump_threshold", c.run.jump_threshold);
  if (e.has("run.diagnostics_stride")) {
    c.run.diagnostics_stride = to_int("run.diagnostics_stride", e.required("run.diagnostics_stride"));
  }
  if (e.has("run.flux")) c.run.flux = trim(e.required("run.flux"));

  c.output_dir = trim(e.required("output.dir"));
  // surface domain errors (e.g. m < 2) as configuration errors
  try {
    (void)c.equation();
  } catch (const DomainError& err) {
    throw ConfigError(err.what());
  }
  return c;
}

SimulationConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string to_config_text(const SimulationConfig& c) {
  std::ostringstream os;
  os << "[equation]\nm = " << fmt(c.m) << "\nn = " << fmt(c.n) << "\n\n";
  os << "[grid]\nx_left = " << fmt(c.grid.x_left) << "\nx_right = " << fmt(c.grid.x_right)
     << "\ncells = " << c.grid.cells << "\npoly_order = " << c.grid.poly_order
     << "\nquad_order = " << c.grid.quad_order << "\n\n";
  os << "[ic]\nkind = " << c.ic.kind << "\n";
  if (c.ic.kind == "cos_cubed_bump") {
    os << "scale = " << fmt(c.ic.scale) << "\n";
  } else if (c.ic.kind == "box") {
    os << "x0 = " << fmt(c.ic.x0) << "\nx1 = " << fmt(c.ic.x1) << "\nheight = " << fmt(c.ic.height)
       << "\n";
  } else if (c.ic.kind == "compacton") {
    os << "solution = " << c.ic.solution << "\nlambda = " << fmt(c.ic.lambda)
       << "\namplitude = " << fmt(c.ic.amplitude) << "\nbranch = " << c.ic.branch << "\n";
  } else if (c.ic.kind == "offset_cosine") {
    os << "offset = " << fmt(c.ic.offset) << "\ncos_amplitude = " << fmt(c.ic.cos_amplitude)
       << "\nwavenumber = " << fmt(c.ic.wavenumber) << "\n";
  } else if (c.ic.kind == "table") {
    os << "file = " << c.ic.file << "\n";
  }
  os << "\n[run]\nt_end = " << fmt(c.run.t_end) << "\n";
  if (c.run.cfl) os << "cfl = " << fmt(*c.run.cfl) << "\n";
  os << "snapshot_times = " << fmt_list(c.run.snapshot_times) << "\n";
  os << "breach_threshold = " << fmt(c.run.breach_threshold)
     << "\njump_threshold = " << fmt(c.run.jump_threshold)
     << "\ndiagnostics_stride = " << c.run.diagnostics_stride << "\nflux = " << c.run.flux << "\n\n";
  os << "[output]\ndir = " << c.output_dir << "\n";
  return os.str();
}

nlohmann::json to_json(const SimulationConfig& c) {
  nlohmann::json ic{{"kind", c.ic.kind}};
  if (c.ic.kind == "cos_cubed_bump") {
    ic["scale"] = c.ic.scale;
  } else if (c.ic.kind == "box") {
    ic["x0"] = c.ic.x0;
    ic["x1"] = c.ic.x1;
    ic["height"] = c.ic.height;
  } else if (c.ic.kind == "compacton") {
    ic["solution"] = c.ic.solution;
    ic["lambda"] = c.ic.lambda;
    ic["amplitude"] = c.ic.amplitude;
    ic["branch"] = c.ic.branch;
  } else if (c.ic.kind == "offset_cosine") {
    ic["offset"] = c.ic.offset;
    ic["cos_amplitude"] = c.ic.cos_amplitude;
    ic["wavenumber"] = c.ic.wavenumber;
  } else if (c.ic.kind == "table") {
    ic["file"] = c.ic.file;
  }
  nlohmann::json run{{"t_end", c.run.t_end},
                     {"snapshot_times", c.run.snapshot_times},
                     {"breach_threshold", c.run.breach_threshold},
                     {"jump_threshold", c.run.jump_threshold},
                     {"diagnostics_stride", c.run.diagnostics_stride},
                     {"flux", c.run.flux}};
  if (c.run.cfl) run["cfl"] = *c.run.cfl;
  return {{"equation", {{"m", c.m}, {"n", c.n}}},
          {"grid",
           {{"x_left", c.grid.x_left},
            {"x_right", c.grid.x_right},
            {"cells", c.grid.cells},
            {"poly_order", c.grid.poly_order},
            {"quad_order", c.grid.quad_order}}},
          {"ic", ic},
          {"run", run},
          {"output", {{"dir", c.output_dir}}}};
}

SimulationConfig config_from_json(const nlohmann::json& j) {
  try {
    SimulationConfig c;
    c.m = j.at("equation").at("m").get<double>();
    c.n = j.at("equation").at("n").get<double>();
    const auto& g = j.at("grid");
    c.grid = {g.at("x_left").get<double>(), g.at("x_right").get<double>(), g.at("cells").get<int>(),
              g.at("poly_order").get<int>(), g.at("quad_order").get<int>()};
    const auto& ic = j.at("ic");
    c.ic.kind = ic.at("kind").get<std::string>();
    c.ic.scale = ic.value("scale", c.ic.scale);
    c.ic.x0 = ic.value("x0", c.ic.x0);
    c.ic.x1 = ic.value("x1", c.ic.x1);
    c.ic.height = ic.value("height", c.ic.height);
    c.ic.solution = ic.value("solution", c.ic.solution);
    c.ic.lambda = ic.value("lambda", c.ic.lambda);
    c.ic.amplitude = ic.value("amplitude", c.ic.amplitude);
    c.ic.branch = ic.value("branch", c.ic.branch);
    c.ic.offset = ic.value("offset", c.ic.offset);
    c.ic.cos_amplitude = ic.value("cos_amplitude", c.ic.cos_amplitude);
    c.ic.wavenumber = ic.value("wavenumber", c.ic.wavenumber);
    c.ic.file = ic.value("file", c.ic.file);
    const auto& r = j.at("run");
    c.run.t_end = r.at("t_end").get<double>();
    if (r.contains("cfl")) c.run.cfl = r.at("cfl").get<double>();
    c.run.snapshot_times = r.at("snapshot_times").get<std::vector<double>>();
    c.run.breach_threshold = r.at("breach_threshold").get<double>();
    c.run.jump_threshold = r.at("jump_threshold").get<double>();
    c.run.diagnostics_stride = r.at("diagnostics_stride").get<int>();
    c.run.flux = r.at("flux").get<std::string>();
    c.output_dir = j.at("output").at("dir").get<std::string>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config JSON: ") + e.what());
  }
}

std::optional<SimulationConfig> recipe(const std::string& name) {
  if (name != "paper-fig1" && name != "paper-fig2") return std::nullopt;
  SimulationConfig c;
  c.m = name == "paper-fig1" ? 2.0 : 3.0;
  c.n = 2.0;
  c.grid = {-8.0 * pi, 8.0 * pi, 400, 3, 5};
  c.ic.kind = "cos_cubed_bump";
  c.ic.scale = 1.0;
  c.run.t_end = name == "paper-fig1" ? 10.0 : 12.0;
  c.run.snapshot_times = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
  c.run.diagnostics_stride = 20000;
  c.output_dir = name;
  return c;
}

std::vector<std::string> recipe_names() { return {"paper-fig1", "paper-fig2"}; }

}  // namespace compacton
