#pragma once

// Internals shared by the TIP solvers. Segments are bucketed into
// "alighting groups": one group per transit center plus a pooled group for
// everything else. Both objectives and the transfer targets are expressed
// per group.

#include <cstdint>
#include <string>
#include <vector>

#include "transitod/model.hpp"

namespace transitod::detail {

struct Grouping {
  // Transit-center stop ids in registry order; group index g < centers.size()
  // is that center, g == centers.size() is the pooled non-center group.
  std::vector<std::string> centers;
  std::vector<int> group_of_segment;
  std::vector<std::int64_t> alight_count;  // segments alighting in each group

  int group_count() const { return static_cast<int>(alight_count.size()); }
  int other_group() const { return static_cast<int>(centers.size()); }
};

Grouping make_grouping(const std::vector<TripSegment>& segments, const StopRegistry& registry);

// Per-group targets aligned with a Grouping; throws when targets name a
// stop that is not a transit center of the registry.
std::vector<std::int64_t> group_deltas(const Grouping& grouping, const TransferTargets& targets);

// Per-group observed rates aligned with a Grouping.
std::vector<double> group_rates(const Grouping& grouping, const TransferRates& rates);

}  // namespace transitod::detail
