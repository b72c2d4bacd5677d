#pragma once

#include <vector>

#include "transitod/model.hpp"

namespace transitod {

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

// Great-circle (haversine) distance in meters, R = 6,371,000 m.
double geo_distance(GeoPoint a, GeoPoint b);

// Candidate-transfer sets T_j. An arc j->k exists iff the segments are on
// different routes, k boards strictly after j alights but within the
// transfer window, and k's boarding stop is strictly within walking
// distance of j's alighting stop.
//
// Implementation sorts segments by boarding time and scans a sliding
// window; the result is identical to the naive all-pairs enumeration.
FeasibilityGraph build_feasibility(const std::vector<TripSegment>& segments,
                                   const StopRegistry& registry,
                                   const FeasibilityParams& params);

// Reference O(|T|^2) construction, kept for equivalence checks.
FeasibilityGraph build_feasibility_naive(const std::vector<TripSegment>& segments,
                                         const StopRegistry& registry,
                                         const FeasibilityParams& params);

// delta_{1,i} = round-half-to-even(p1_i * |{j : a_j = i}|), per transit
// center; delta_2 analogous over segments alighting at non-centers.
TransferTargets observed_transfer_targets(const std::vector<TripSegment>& segments,
                                          const StopRegistry& registry,
                                          const TransferRates& rates);

// Debug dump: one `tail_segment,head_segment` row per arc.
void emit_feasibility_arcs(const std::string& path, const FeasibilityGraph& graph);

}  // namespace transitod
