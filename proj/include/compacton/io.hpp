#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"

#include "compacton/bounds.hpp"
#include "compacton/diagnostics.hpp"
#include "compacton/events.hpp"
#include "compacton/timestepper.hpp"

namespace compacton {

std::string_view version();

/// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

/// snapshots.csv: t,cell,node,x,u ordered by (t, x).  Returns the data row count.
std::size_t write_snapshots_csv(const std::filesystem::path& path,
                                std::span<const Snapshot> trajectory);

/// diagnostics.csv, one row per record in time order.  Returns the data row count.
std::size_t write_diagnostics_csv(const std::filesystem::path& path,
                                  std::span<const DiagnosticsRecord> records);
std::string diagnostics_csv_header();

nlohmann::json to_json(const Event& e);
nlohmann::json to_json(const EventLog& events);
EventLog events_from_json(const nlohmann::json& j);
/// events.json: array of {t, kind, detail}.  Returns the number of events.
std::size_t write_events_json(const std::filesystem::path& path, const EventLog& events);

nlohmann::json to_json(const BoundsReport& r);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// UTC wall time in ISO 8601.
std::string utc_timestamp();

/// Data rows of a CSV file (lines after the header).
std::size_t count_csv_rows(const std::filesystem::path& path);

}  // namespace compacton
