#include "transitod/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

#include "transitod/csv.hpp"

namespace transitod {

namespace {

double parse_coord(const std::string& text, const std::string& path, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": unparsable coordinate '" +
                             text + "'");
  }
  return v;
}

bool parse_bool(const std::string& text, const std::string& path, int line) {
  std::string lower;
  for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "1" || lower == "true") return true;
  if (lower == "0" || lower == "false") return false;
  throw std::runtime_error(path + ":" + std::to_string(line) + ": unparsable boolean '" + text +
                           "'");
}

double parse_rate(const std::string& text, const std::string& path, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": unparsable rate '" + text +
                             "'");
  }
  if (v < 0.0 || v > 1.0) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": rate out of [0,1]: " + text);
  }
  return v;
}

void require_header(const csv::Table& t, const std::vector<std::string>& names,
                    const std::string& path) {
  for (const auto& name : names) {
    if (t.column(name) < 0) {
      throw std::runtime_error(path + ": missing required column '" + name + "'");
    }
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

}  // namespace

StopRegistry parse_stops(const std::string& path) {
  csv::Table t = csv::read_file(path);
  require_header(t, {"stop_id", "lat", "lon", "is_transit_center"}, path);
  int c_id = t.column("stop_id");
  int c_lat = t.column("lat");
  int c_lon = t.column("lon");
  int c_center = t.column("is_transit_center");
  StopRegistry reg;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    int line = t.line_numbers[r];
    Stop s;
    s.stop_id = row[static_cast<size_t>(c_id)];
    s.lat = parse_coord(row[static_cast<size_t>(c_lat)], path, line);
    s.lon = parse_coord(row[static_cast<size_t>(c_lon)], path, line);
    s.is_transit_center = parse_bool(row[static_cast<size_t>(c_center)], path, line);
    if (s.lat < -90.0 || s.lat > 90.0 || s.lon < -180.0 || s.lon > 180.0) {
      throw std::runtime_error(path + ":" + std::to_string(line) +
                               ": coordinate out of range for stop " + s.stop_id);
    }
    try {
      reg.add(std::move(s));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return reg;
}

std::vector<TripSegment> parse_segments(const std::string& path, const StopRegistry& registry) {
  csv::Table t = csv::read_file(path);
  require_header(
      t, {"segment_id", "route_id", "board_stop", "alight_stop", "board_time", "alight_time"},
      path);
  int c_seg = t.column("segment_id");
  int c_route = t.column("route_id");
  int c_board = t.column("board_stop");
  int c_alight = t.column("alight_stop");
  int c_bt = t.column("board_time");
  int c_at = t.column("alight_time");
  std::vector<TripSegment> out;
  out.reserve(t.rows.size());
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    int line = t.line_numbers[r];
    TripSegment seg;
    seg.segment_id = row[static_cast<size_t>(c_seg)];
    seg.route_id = row[static_cast<size_t>(c_route)];
    seg.board_stop = row[static_cast<size_t>(c_board)];
    seg.alight_stop = row[static_cast<size_t>(c_alight)];
    try {
      seg.board_time = csv::parse_hms(row[static_cast<size_t>(c_bt)]);
      seg.alight_time = csv::parse_hms(row[static_cast<size_t>(c_at)]);
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": " + e.what());
    }
    if (!registry.contains(seg.board_stop)) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": unknown board_stop '" +
                               seg.board_stop + "' in segment " + seg.segment_id);
    }
    if (!registry.contains(seg.alight_stop)) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": unknown alight_stop '" +
                               seg.alight_stop + "' in segment " + seg.segment_id);
    }
    if (seg.alight_time < seg.board_time) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": segment " + seg.segment_id +
                               " alights before it boards");
    }
    out.push_back(std::move(seg));
  }
  return out;
}

TransferRates parse_rates(const std::string& path, const StopRegistry& registry) {
  csv::Table t = csv::read_file(path);
  require_header(t, {"scope", "stop_id", "rate"}, path);
  int c_scope = t.column("scope");
  int c_stop = t.column("stop_id");
  int c_rate = t.column("rate");
  TransferRates rates;
  int other_rows = 0;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    int line = t.line_numbers[r];
    const std::string& scope = row[static_cast<size_t>(c_scope)];
    const std::string& stop_id = row[static_cast<size_t>(c_stop)];
    double rate = parse_rate(row[static_cast<size_t>(c_rate)], path, line);
    if (scope == "center") {
      int idx = registry.index_of(stop_id);
      if (idx < 0) {
        throw std::runtime_error(path + ":" + std::to_string(line) + ": unknown stop '" +
                                 stop_id + "' in center rate row");
      }
      if (!registry.at(idx).is_transit_center) {
        throw std::runtime_error(path + ":" + std::to_string(line) + ": stop '" + stop_id +
                                 "' is not flagged is_transit_center");
      }
      if (!rates.p1.emplace(stop_id, rate).second) {
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": duplicate center rate for stop '" + stop_id + "'");
      }
    } else if (scope == "other") {
      if (!stop_id.empty()) {
        throw std::runtime_error(path + ":" + std::to_string(line) +
                                 ": 'other' row must have an empty stop_id");
      }
      rates.p2 = rate;
      ++other_rows;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": unknown scope '" + scope +
                               "'");
    }
  }
  if (other_rows != 1) {
    throw std::runtime_error(path + ": expected exactly one 'other' row, found " +
                             std::to_string(other_rows));
  }
  return rates;
}

ZoneMap parse_zones(const std::string& path, const StopRegistry& registry) {
  csv::Table t = csv::read_file(path);
  require_header(t, {"stop_id", "zone_id"}, path);
  int c_stop = t.column("stop_id");
  int c_zone = t.column("zone_id");
  ZoneMap zm;
  std::unordered_map<std::string, int> zone_index;
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    int line = t.line_numbers[r];
    const std::string& stop_id = row[static_cast<size_t>(c_stop)];
    const std::string& zone_id = row[static_cast<size_t>(c_zone)];
    if (!registry.contains(stop_id)) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": unknown stop '" + stop_id +
                               "'");
    }
    auto [zit, zinserted] = zone_index.emplace(zone_id, static_cast<int>(zm.zones.size()));
    if (zinserted) zm.zones.push_back(zone_id);
    if (!zm.assignment.emplace(stop_id, zit->second).second) {
      throw std::runtime_error(path + ":" + std::to_string(line) + ": duplicate row for stop '" +
                               stop_id + "'");
    }
  }
  std::vector<std::string> missing;
  for (const auto& s : registry.stops()) {
    if (!zm.assignment.count(s.stop_id)) missing.push_back(s.stop_id);
  }
  if (!missing.empty()) {
    std::string msg = path + ": zone map missing stops:";
    for (const auto& id : missing) msg += " " + id;
    throw std::runtime_error(msg);
  }
  return zm;
}

void emit_stops(const std::string& path, const StopRegistry& registry) {
  auto out = open_out(path);
  out << "stop_id,lat,lon,is_transit_center\n";
  for (const auto& s : registry.stops()) {
    out << s.stop_id << ',' << csv::format_double(s.lat) << ',' << csv::format_double(s.lon)
        << ',' << (s.is_transit_center ? '1' : '0') << '\n';
  }
}

void emit_segments(const std::string& path, const std::vector<TripSegment>& segments) {
  auto out = open_out(path);
  out << "segment_id,route_id,board_stop,alight_stop,board_time,alight_time\n";
  for (const auto& seg : segments) {
    out << seg.segment_id << ',' << seg.route_id << ',' << seg.board_stop << ','
        << seg.alight_stop << ',' << csv::format_hms(seg.board_time) << ','
        << csv::format_hms(seg.alight_time) << '\n';
  }
}

void emit_rates(const std::string& path, const TransferRates& rates) {
  auto out = open_out(path);
  out << "scope,stop_id,rate\n";
  for (const auto& [stop_id, rate] : rates.p1) {
    out << "center," << stop_id << ',' << csv::format_double(rate) << '\n';
  }
  out << "other,," << csv::format_double(rates.p2) << '\n';
}

void emit_zones(const std::string& path, const ZoneMap& zones, const StopRegistry& registry) {
  auto out = open_out(path);
  out << "stop_id,zone_id\n";
  for (const auto& s : registry.stops()) {
    out << s.stop_id << ',' << zones.zones.at(static_cast<size_t>(zones.zone_of(s.stop_id)))
        << '\n';
  }
}

void convert_gtfs_stops(const std::string& gtfs_stops_path, const std::string& out_path) {
  csv::Table t = csv::read_file(gtfs_stops_path);
  require_header(t, {"stop_id", "stop_lat", "stop_lon"}, gtfs_stops_path);
  int c_id = t.column("stop_id");
  int c_lat = t.column("stop_lat");
  int c_lon = t.column("stop_lon");
  int c_type = t.column("location_type");  // optional
  auto out = open_out(out_path);
  out << "stop_id,lat,lon,is_transit_center\n";
  for (size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    bool center = c_type >= 0 && row[static_cast<size_t>(c_type)] == "1";
    out << row[static_cast<size_t>(c_id)] << ',' << row[static_cast<size_t>(c_lat)] << ','
        << row[static_cast<size_t>(c_lon)] << ',' << (center ? '1' : '0') << '\n';
  }
}

}  // namespace transitod
