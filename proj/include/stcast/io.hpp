#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "stcast/core.hpp"

namespace stcast::io {

// Default epoch for timestamp <-> period mapping: 2024-01-01T00:00:00Z, a
// Monday, so that week position 0 is the start of a Monday.
extern const std::int64_t kDefaultEpochSeconds;

// Strict "YYYY-MM-DDTHH:MM:SS" (optional trailing 'Z') UTC parser; returns
// seconds since the Unix epoch. Throws IoError on malformed input.
std::int64_t parse_timestamp(const std::string& text);
std::string format_timestamp(std::int64_t seconds_since_epoch);

// Hourly bins by floor division from the epoch.
PeriodIndex period_of(std::int64_t seconds_since_epoch, std::int64_t epoch_seconds);

struct EventCsvOptions {
  std::int64_t epoch_seconds = kDefaultEpochSeconds;
  // When set, fixes T instead of deriving it from the last event.
  std::optional<PeriodIndex> total_periods;
};

// Header "timestamp,x_km,y_km", one event per row.
EventLog load_events_csv(const std::string& path, const SpatialDomain& domain,
                         const EventCsvOptions& options = {});
void save_events_csv(const EventLog& log, const std::string& path,
                     std::int64_t epoch_seconds = kDefaultEpochSeconds);

// Grid CSV "x_center,y_center,density" plus a JSON sidecar (path + ".meta.json")
// carrying the domain, period, and model metadata.
void export_density_grid(const DensityGrid& grid, PeriodIndex t, const std::string& model_name,
                         const std::string& csv_path);
DensityGrid load_density_grid_csv(const std::string& csv_path, const SpatialDomain& domain);

nlohmann::json domain_to_json(const SpatialDomain& domain);
SpatialDomain domain_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace stcast::io
