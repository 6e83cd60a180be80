#include "compacton/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "compacton/error.hpp"

#ifndef COMPACTON_VERSION
#define COMPACTON_VERSION "unknown"
#endif

namespace compacton {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string_view version() { return COMPACTON_VERSION; }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t write_snapshots_csv(const std::filesystem::path& path,
                                std::span<const Snapshot> trajectory) {
  auto out = open_out(path);
  out << "t,cell,node,x,u\n";
  std::size_t rows = 0;
  for (const auto& snap : trajectory) {
    const auto& g = snap.u.grid();
    const std::string t = format_double(snap.t);
    for (int j = 0; j < g.num_cells(); ++j) {
      for (int i = 0; i < g.nodes_per_cell(); ++i) {
        out << t << ',' << j << ',' << i << ',' << format_double(g.node_x(j, i)) << ','
            << format_double(snap.u.at(j, i)) << '\n';
        ++rows;
      }
    }
  }
  return rows;
}

std::string diagnostics_csv_header() {
  return "t,I1,I_omega,hamiltonian,xmom,x3mom,conv_flux,disp_mass,min_u,supp_left,supp_right,"
         "max_jump2,weighted_omega_mom";
}

std::size_t write_diagnostics_csv(const std::filesystem::path& path,
                                  std::span<const DiagnosticsRecord> records) {
  auto out = open_out(path);
  out << diagnostics_csv_header() << '\n';
  for (const auto& r : records) {
    const double fields[] = {r.t,         r.I1,       r.I_omega,   r.hamiltonian, r.xmom,
                             r.x3mom,     r.conv_flux, r.disp_mass, r.min_u,       r.supp_left,
                             r.supp_right, r.max_jump2, r.weighted_omega_mom};
    for (std::size_t k = 0; k < std::size(fields); ++k) {
      out << (k ? "," : "") << format_double(fields[k]);
    }
    out << '\n';
  }
  return records.size();
}

nlohmann::json to_json(const Event& e) {
  return {{"t", e.t}, {"kind", std::string(to_string(e.kind))}, {"detail", e.detail}};
}

nlohmann::json to_json(const EventLog& events) {
  auto arr = nlohmann::json::array();
  for (const auto& e : events) arr.push_back(to_json(e));
  return arr;
}

EventLog events_from_json(const nlohmann::json& j) {
  EventLog log;
  for (const auto& e : j) {
    log.push_back({e.at("t").get<double>(),
                   event_kind_from_string(e.at("kind").get<std::string>()),
                   e.at("detail").get<std::string>()});
  }
  return log;
}

std::size_t write_events_json(const std::filesystem::path& path, const EventLog& events) {
  write_json(path, to_json(events));
  return events.size();
}

nlohmann::json to_json(const BoundsReport& r) {
  return {{"x0", r.x0},
          {"x1", r.x1},
          {"d", r.d},
          {"I1", r.I1},
          {"I_omega", r.I_omega},
          {"xmom", r.xmom},
          {"x3mom_centered", r.x3mom},
          {"floor", r.floor},
          {"T1", r.T1},
          {"T2", r.T2 ? nlohmann::json(*r.T2) : nlohmann::json(nullptr)},
          {"T3", r.T3},
          {"T2_applicable", r.T2.has_value()},
          {"min_bound", r.min_bound()}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  return nlohmann::json::parse(in);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::size_t count_csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++lines;
  }
  return lines == 0 ? 0 : lines - 1;
}

}  // namespace compacton
