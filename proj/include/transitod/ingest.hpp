#pragma once

#include <string>
#include <vector>

#include "transitod/model.hpp"

namespace transitod {

// Delimited-text ingestion. All schemas are comma-separated UTF-8 with a
// mandatory header row; emitted files use LF endings and HH:MM:SS times.

// Header: stop_id,lat,lon,is_transit_center
// The boolean column accepts 0/1/true/false case-insensitively.
StopRegistry parse_stops(const std::string& path);

// Header: segment_id,route_id,board_stop,alight_stop,board_time,alight_time
// Times are HH:MM:SS; hours beyond 23 denote post-midnight service.
std::vector<TripSegment> parse_segments(const std::string& path, const StopRegistry& registry);

// Rows: scope,stop_id,rate with scope in {center, other}; exactly one
// `other` row with an empty stop_id.
TransferRates parse_rates(const std::string& path, const StopRegistry& registry);

// Header: stop_id,zone_id; every registry stop must appear exactly once.
// Zones are ordered by first appearance.
ZoneMap parse_zones(const std::string& path, const StopRegistry& registry);

void emit_stops(const std::string& path, const StopRegistry& registry);
void emit_segments(const std::string& path, const std::vector<TripSegment>& segments);
void emit_rates(const std::string& path, const TransferRates& rates);
void emit_zones(const std::string& path, const ZoneMap& zones, const StopRegistry& registry);

// Non-normative helper: converts a GTFS stops.txt into the stops schema.
// No transit-center flag exists in GTFS; stops whose location_type is "1"
// (station) are flagged as centers.
void convert_gtfs_stops(const std::string& gtfs_stops_path, const std::string& out_path);

}  // namespace transitod
