#include "solver_common.hpp"

#include <stdexcept>
#include <unordered_map>

namespace transitod::detail {

Grouping make_grouping(const std::vector<TripSegment>& segments, const StopRegistry& registry) {
  Grouping g;
  std::unordered_map<std::string, int> center_index;
  for (const auto& s : registry.stops()) {
    if (s.is_transit_center) {
      center_index.emplace(s.stop_id, static_cast<int>(g.centers.size()));
      g.centers.push_back(s.stop_id);
    }
  }
  g.alight_count.assign(g.centers.size() + 1, 0);
  g.group_of_segment.reserve(segments.size());
  for (const auto& seg : segments) {
    const Stop& a = registry.get(seg.alight_stop);
    int grp = g.other_group();
    if (a.is_transit_center) grp = center_index.at(a.stop_id);
    g.group_of_segment.push_back(grp);
    ++g.alight_count[static_cast<size_t>(grp)];
  }
  return g;
}

std::vector<std::int64_t> group_deltas(const Grouping& grouping, const TransferTargets& targets) {
  std::vector<std::int64_t> delta(static_cast<size_t>(grouping.group_count()), 0);
  for (const auto& [stop_id, d] : targets.delta1) {
    int idx = -1;
    for (int i = 0; i < static_cast<int>(grouping.centers.size()); ++i) {
      if (grouping.centers[static_cast<size_t>(i)] == stop_id) {
        idx = i;
        break;
      }
    }
    if (idx < 0) {
      throw std::runtime_error("targets.delta1 names '" + stop_id +
                               "', which is not a transit center of the registry");
    }
    delta[static_cast<size_t>(idx)] = d;
  }
  delta[static_cast<size_t>(grouping.other_group())] = targets.delta2;
  return delta;
}

std::vector<double> group_rates(const Grouping& grouping, const TransferRates& rates) {
  std::vector<double> out(static_cast<size_t>(grouping.group_count()), 0.0);
  for (int i = 0; i < static_cast<int>(grouping.centers.size()); ++i) {
    auto it = rates.p1.find(grouping.centers[static_cast<size_t>(i)]);
    if (it == rates.p1.end()) {
      throw std::runtime_error("no observed rate for transit center '" +
                               grouping.centers[static_cast<size_t>(i)] + "'");
    }
    out[static_cast<size_t>(i)] = it->second;
  }
  out[static_cast<size_t>(grouping.other_group())] = rates.p2;
  return out;
}

}  // namespace transitod::detail
