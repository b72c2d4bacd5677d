#include "transitod/model.hpp"

#include <algorithm>

namespace transitod {

void StopRegistry::add(Stop stop) {
  if (stop.lat < -90.0 || stop.lat > 90.0) {
    throw std::runtime_error("stop " + stop.stop_id + ": latitude out of range: " +
                             std::to_string(stop.lat));
  }
  if (stop.lon < -180.0 || stop.lon > 180.0) {
    throw std::runtime_error("stop " + stop.stop_id + ": longitude out of range: " +
                             std::to_string(stop.lon));
  }
  auto [it, inserted] = index_.emplace(stop.stop_id, static_cast<int>(stops_.size()));
  if (!inserted) throw std::runtime_error("duplicate stop_id: " + stop.stop_id);
  stops_.push_back(std::move(stop));
}

int StopRegistry::index_of(const std::string& stop_id) const {
  auto it = index_.find(stop_id);
  return it == index_.end() ? -1 : it->second;
}

const Stop& StopRegistry::get(const std::string& stop_id) const {
  int idx = index_of(stop_id);
  if (idx < 0) throw std::runtime_error("unknown stop_id: " + stop_id);
  return stops_[static_cast<size_t>(idx)];
}

std::vector<std::string> StopRegistry::transit_centers() const {
  std::vector<std::string> out;
  for (const auto& s : stops_) {
    if (s.is_transit_center) out.push_back(s.stop_id);
  }
  return out;
}

std::vector<FeasibilityGraph::Arc> FeasibilityGraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count());
  for (int j = 0; j < static_cast<int>(succ.size()); ++j) {
    for (int k : succ[static_cast<size_t>(j)]) out.push_back(Arc{j, k});
  }
  return out;
}

std::size_t FeasibilityGraph::arc_count() const {
  std::size_t n = 0;
  for (const auto& s : succ) n += s.size();
  return n;
}

bool TransferAssignment::second_leg(int j) const {
  for (const auto& t : transfer_to) {
    if (t && *t == j) return true;
  }
  return false;
}

std::int64_t TransferAssignment::transfer_count() const {
  std::int64_t n = 0;
  for (const auto& t : transfer_to) {
    if (t) ++n;
  }
  return n;
}

std::string TransferAssignment::check(const FeasibilityGraph& graph) const {
  if (transfer_to.size() != graph.segments.size()) return "assignment size mismatch";
  std::vector<char> is_target(transfer_to.size(), 0);
  for (size_t j = 0; j < transfer_to.size(); ++j) {
    if (!transfer_to[j]) continue;
    int k = *transfer_to[j];
    const auto& sj = graph.succ[j];
    if (!std::binary_search(sj.begin(), sj.end(), k)) {
      return "transfer " + std::to_string(j) + "->" + std::to_string(k) +
             " is not a feasible arc";
    }
    if (is_target[static_cast<size_t>(k)]) {
      return "segment " + std::to_string(k) + " is the target of two transfers";
    }
    is_target[static_cast<size_t>(k)] = 1;
  }
  for (size_t k = 0; k < transfer_to.size(); ++k) {
    if (is_target[k] && transfer_to[k]) {
      return "segment " + std::to_string(k) + " is both a first and a second leg";
    }
  }
  return {};
}

std::vector<int> RoundedSolution::members(TripClass c) const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(cls.size()); ++j) {
    if (cls[static_cast<size_t>(j)] == c) out.push_back(j);
  }
  return out;
}

int ZoneMap::zone_of(const std::string& stop_id) const {
  auto it = assignment.find(stop_id);
  if (it == assignment.end()) throw std::runtime_error("stop not in zone map: " + stop_id);
  return it->second;
}

ZoneMap ZoneMap::identity(const StopRegistry& registry) {
  ZoneMap zm;
  zm.zones.reserve(static_cast<size_t>(registry.size()));
  for (const auto& s : registry.stops()) {
    zm.assignment.emplace(s.stop_id, static_cast<int>(zm.zones.size()));
    zm.zones.push_back(s.stop_id);
  }
  return zm;
}

double ODMatrix::at(int from, int to) const {
  auto it = flow.find({from, to});
  return it == flow.end() ? 0.0 : it->second;
}

void ODMatrix::add(int from, int to, double v) {
  if (v == 0.0) return;
  flow[{from, to}] += v;
}

double ODMatrix::total() const {
  double t = 0.0;
  for (const auto& [_, v] : flow) t += v;
  return t;
}

std::vector<Violation> validate_instance(const std::vector<TripSegment>& segments,
                                         const StopRegistry& registry,
                                         const TransferRates& rates) {
  std::vector<Violation> out;
  for (const auto& seg : segments) {
    if (!registry.contains(seg.board_stop)) {
      out.push_back({seg.segment_id, "unknown board_stop: " + seg.board_stop});
    }
    if (!registry.contains(seg.alight_stop)) {
      out.push_back({seg.segment_id, "unknown alight_stop: " + seg.alight_stop});
    }
    if (seg.alight_time < seg.board_time) {
      out.push_back({seg.segment_id, "alight_time precedes board_time"});
    }
    if (seg.board_stop == seg.alight_stop) {
      out.push_back({seg.segment_id, "board_stop equals alight_stop"});
    }
  }
  for (const auto& [stop_id, rate] : rates.p1) {
    int idx = registry.index_of(stop_id);
    if (idx < 0) {
      out.push_back({stop_id, "rate refers to unknown stop"});
    } else if (!registry.at(idx).is_transit_center) {
      out.push_back({stop_id, "rate p1 given for a stop that is not a transit center"});
    }
    if (rate < 0.0 || rate > 1.0) {
      out.push_back({stop_id, "rate p1 out of [0,1]: " + std::to_string(rate)});
    }
  }
  if (rates.p2 < 0.0 || rates.p2 > 1.0) {
    out.push_back({"p2", "rate p2 out of [0,1]: " + std::to_string(rates.p2)});
  }
  return out;
}

}  // namespace transitod
