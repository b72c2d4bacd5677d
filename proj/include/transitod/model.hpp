#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace transitod {

// All times are integer seconds since service-day midnight; values above
// 86400 are legal and denote post-midnight service (GTFS convention).
using Seconds = std::int64_t;

struct Stop {
  std::string stop_id;
  double lat = 0.0;
  double lon = 0.0;
  bool is_transit_center = false;
};

// Ordered stop universe with O(1) id lookup. Immutable once built.
class StopRegistry {
 public:
  StopRegistry() = default;

  // Throws on duplicate id or out-of-range coordinates.
  void add(Stop stop);

  int size() const { return static_cast<int>(stops_.size()); }
  const Stop& at(int idx) const { return stops_.at(static_cast<size_t>(idx)); }
  const std::vector<Stop>& stops() const { return stops_; }

  // -1 when the id is unknown.
  int index_of(const std::string& stop_id) const;
  bool contains(const std::string& stop_id) const { return index_of(stop_id) >= 0; }
  const Stop& get(const std::string& stop_id) const;

  // Transit-center stop ids in registry order.
  std::vector<std::string> transit_centers() const;

 private:
  std::vector<Stop> stops_;
  std::unordered_map<std::string, int> index_;
};

// One boarding-alighting pair on a single route.
struct TripSegment {
  std::string segment_id;
  std::string route_id;
  std::string board_stop;
  std::string alight_stop;
  Seconds board_time = 0;
  Seconds alight_time = 0;
};

// Observed long-run transfer rates: one per transit center, one pooled
// rate for all other stops.
struct TransferRates {
  std::map<std::string, double> p1;  // transit-center stop_id -> rate
  double p2 = 0.0;                   // rate at non-center stops
};

struct FeasibilityParams {
  double max_walk_m = 402.0;
  Seconds max_transfer_s = 1800;
};

// Candidate-transfer graph: succ[j] lists the segments k that could be the
// second leg of a transfer from j (different route, within walking distance
// of j's alighting stop, boarding strictly after j alights within the
// transfer window). Arcs always run forward in time, so the graph is a DAG.
struct FeasibilityGraph {
  std::vector<TripSegment> segments;
  std::vector<std::vector<int>> succ;  // sorted ascending, never contains j itself

  struct Arc {
    int tail = 0;
    int head = 0;
  };
  // Flattened arc list, ordered by (tail, head).
  std::vector<Arc> arcs() const;
  std::size_t arc_count() const;
};

// Integer transfer targets derived from rates and alighting counts.
struct TransferTargets {
  std::map<std::string, std::int64_t> delta1;  // per transit center
  std::int64_t delta2 = 0;                     // pooled non-center target
  std::int64_t n = 0;                          // sum of all deltas
};

// Integral TIP solution: a node-disjoint arc set. transfer_to[j] is the
// successor index when j is a first leg, and nullopt otherwise.
struct TransferAssignment {
  std::vector<std::optional<int>> transfer_to;

  bool first_leg(int j) const { return transfer_to.at(static_cast<size_t>(j)).has_value(); }
  bool second_leg(int j) const;
  int size() const { return static_cast<int>(transfer_to.size()); }
  std::int64_t transfer_count() const;

  // Verifies node-disjointness and arc membership against a graph.
  // Returns an empty string when valid, else a description of the breach.
  std::string check(const FeasibilityGraph& graph) const;
};

// Relaxed QCP solution. y is indexed parallel to FeasibilityGraph::arcs().
struct FractionalSolution {
  std::vector<double> x;             // per segment, in [0,1]
  std::vector<double> y;             // per arc, in [0,1]
  std::map<std::string, double> p1;  // per transit center with >=1 alighting
  double p2 = 0.0;
  double objective = 0.0;
};

enum class TripClass : std::uint8_t { Singleton = 0, FirstLeg = 1, SecondLeg = 2 };

// Rounded QCP solution: the T1/T2/Ts partition plus, for each surviving
// first leg, a normalized distribution over its feasible second legs.
struct RoundedSolution {
  std::vector<TripClass> cls;

  struct FirstLegDistribution {
    int first = 0;
    std::vector<std::pair<int, double>> probs;  // (second leg, weight), weights sum to 1
  };
  std::vector<FirstLegDistribution> distributions;  // ascending by first

  std::vector<int> members(TripClass c) const;
};

// Stop -> zone mapping; zones keep first-appearance order.
struct ZoneMap {
  std::vector<std::string> zones;
  std::unordered_map<std::string, int> assignment;  // stop_id -> zone index

  int zone_of(const std::string& stop_id) const;
  static ZoneMap identity(const StopRegistry& registry);
};

// Sparse nonnegative square flow matrix over a zone universe.
struct ODMatrix {
  ZoneMap zone_map;
  std::map<std::pair<int, int>, double> flow;

  double at(int from, int to) const;
  void add(int from, int to, double v);
  double total() const;
};

struct Violation {
  std::string subject;
  std::string message;
};

// Report-only admissibility check: unknown stops, inverted times,
// rates out of range. Empty result == admissible instance.
std::vector<Violation> validate_instance(const std::vector<TripSegment>& segments,
                                         const StopRegistry& registry,
                                         const TransferRates& rates);

}  // namespace transitod
