#include "stcast/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stcast::io {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

int parse_fixed_int(const std::string& text, std::size_t pos, std::size_t len) {
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (i >= text.size() || text[i] < '0' || text[i] > '9') {
      throw IoError("bad timestamp: '" + text + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

}  // namespace

const std::int64_t kDefaultEpochSeconds = days_from_civil(2024, 1, 1) * 86400;

std::int64_t parse_timestamp(const std::string& text) {
  // YYYY-MM-DDTHH:MM:SS with optional trailing Z.
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
    throw IoError("bad timestamp: '" + text + "'");
  }
  if (text.size() > 19 && !(text.size() == 20 && text[19] == 'Z')) {
    throw IoError("bad timestamp: '" + text + "'");
  }
  const int year = parse_fixed_int(text, 0, 4);
  const int month = parse_fixed_int(text, 5, 2);
  const int day = parse_fixed_int(text, 8, 2);
  const int hour = parse_fixed_int(text, 11, 2);
  const int minute = parse_fixed_int(text, 14, 2);
  const int second = parse_fixed_int(text, 17, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60) {
    throw IoError("bad timestamp: '" + text + "'");
  }
  return days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
}

std::string format_timestamp(std::int64_t seconds) {
  std::int64_t days = seconds / 86400;
  std::int64_t rem = seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y, m, d;
  civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02" PRId64 ":%02" PRId64 ":%02" PRId64 "Z", y,
                m, d, rem / 3600, (rem % 3600) / 60, rem % 60);
  return buf;
}

PeriodIndex period_of(std::int64_t seconds, std::int64_t epoch_seconds) {
  const std::int64_t delta = seconds - epoch_seconds;
  // Floor division for negative offsets as well.
  return delta >= 0 ? delta / 3600 : (delta - 3599) / 3600;
}

EventLog load_events_csv(const std::string& path, const SpatialDomain& domain,
                         const EventCsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open events file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw IoError("empty events file: " + path);
  if (line.size() && line.back() == '\r') line.pop_back();
  if (line != "timestamp,x_km,y_km") {
    throw IoError("unexpected header in " + path + ": '" + line + "'");
  }

  std::vector<Event> events;
  std::size_t row = 1;
  PeriodIndex max_t = -1;
  while (std::getline(in, line)) {
    ++row;
    if (line.size() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw IoError(path + ": malformed row " + std::to_string(row));
    }
    Event e;
    const std::int64_t ts = parse_timestamp(line.substr(0, c1));
    e.t = period_of(ts, options.epoch_seconds);
    try {
      e.s.x = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      e.s.y = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      throw IoError(path + ": malformed coordinates at row " + std::to_string(row));
    }
    if (e.t < 0) throw IoError(path + ": timestamp before epoch at row " + std::to_string(row));
    max_t = std::max(max_t, e.t);
    events.push_back(e);
  }

  const PeriodIndex total = options.total_periods.value_or(max_t + 1);
  TimeGrid grid(24, std::max<PeriodIndex>(total, 1));
  return EventLog(std::move(events), grid, domain);
}

void save_events_csv(const EventLog& log, const std::string& path, std::int64_t epoch_seconds) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write events file: " + path);
  out << "timestamp,x_km,y_km\n";
  char buf[80];
  for (const Event& e : log.events()) {
    const std::string ts = format_timestamp(epoch_seconds + e.t * 3600);
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g\n", ts.c_str(), e.s.x, e.s.y);
    out << buf;
  }
  if (!out) throw IoError("write failure: " + path);
}

void export_density_grid(const DensityGrid& grid, PeriodIndex t, const std::string& model_name,
                         const std::string& csv_path) {
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write grid file: " + csv_path);
  out << "x_center,y_center,density\n";
  char buf[96];
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Point c = grid.center(ix, iy);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", c.x, c.y, grid.at(ix, iy));
      out << buf;
    }
  }
  if (!out) throw IoError("write failure: " + csv_path);

  nlohmann::json meta;
  meta["schema_version"] = 1;
  meta["domain"] = domain_to_json(grid.domain);
  meta["t"] = t;
  meta["model"] = model_name;
  meta["nx"] = grid.nx;
  meta["ny"] = grid.ny;
  meta["cell_area"] = grid.cell_area;
  write_json_file(meta, csv_path + ".meta.json");
}

DensityGrid load_density_grid_csv(const std::string& csv_path, const SpatialDomain& domain) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open grid file: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty grid file: " + csv_path);

  std::vector<double> xs, ys, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw IoError(csv_path + ": malformed grid row");
    }
    xs.push_back(std::stod(line.substr(0, c1)));
    ys.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    vs.push_back(std::stod(line.substr(c2 + 1)));
  }
  // Infer nx from the first wrap of x values.
  std::size_t nx = xs.size();
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] < xs[i - 1]) {
      nx = i;
      break;
    }
  }
  if (nx == 0 || vs.size() % nx != 0) throw IoError(csv_path + ": inconsistent grid shape");

  DensityGrid grid;
  grid.domain = domain;
  grid.nx = static_cast<int>(nx);
  grid.ny = static_cast<int>(vs.size() / nx);
  grid.cell_area = domain.bbox().area() / static_cast<double>(vs.size());
  grid.values = std::move(vs);
  return grid;
}

nlohmann::json domain_to_json(const SpatialDomain& domain) {
  nlohmann::json j;
  const BoundingBox& b = domain.bbox();
  j["bbox"] = {b.xmin, b.ymin, b.xmax, b.ymax};
  if (domain.mask()) {
    nlohmann::json verts = nlohmann::json::array();
    for (const Point& p : domain.mask()->vertices()) verts.push_back({p.x, p.y});
    j["mask"] = verts;
  }
  return j;
}

SpatialDomain domain_from_json(const nlohmann::json& j) {
  const auto& b = j.at("bbox");
  BoundingBox box{b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
                  b.at(3).get<double>()};
  if (j.contains("mask")) {
    std::vector<Point> verts;
    for (const auto& v : j.at("mask")) verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    return SpatialDomain(box, Polygon(std::move(verts)));
  }
  return SpatialDomain(box);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write file: " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace stcast::io
