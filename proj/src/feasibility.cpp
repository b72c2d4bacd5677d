#include "transitod/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace transitod {

namespace {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kPi = 3.14159265358979323846;

double to_radians(double deg) { return deg * kPi / 180.0; }

// Round half to even; the tie rule matters because rate * count lands on
// .5 whenever counts are even and rates have two decimals.
std::int64_t round_half_even(double v) {
  double floor_v = std::floor(v);
  double frac = v - floor_v;
  auto lo = static_cast<std::int64_t>(floor_v);
  if (frac > 0.5) return lo + 1;
  if (frac < 0.5) return lo;
  return (lo % 2 == 0) ? lo : lo + 1;
}

}  // namespace

double geo_distance(GeoPoint a, GeoPoint b) {
  double phi1 = to_radians(a.lat);
  double phi2 = to_radians(b.lat);
  double dphi = to_radians(b.lat - a.lat);
  double dlambda = to_radians(b.lon - a.lon);
  double s1 = std::sin(dphi / 2.0);
  double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

namespace {

FeasibilityGraph build_impl(const std::vector<TripSegment>& segments,
                            const StopRegistry& registry, const FeasibilityParams& params,
                            bool windowed) {
  if (params.max_walk_m <= 0.0) throw std::runtime_error("max_walk_m must be positive");
  if (params.max_transfer_s <= 0) throw std::runtime_error("max_transfer_s must be positive");

  const int n = static_cast<int>(segments.size());
  FeasibilityGraph g;
  g.segments = segments;
  g.succ.assign(static_cast<size_t>(n), {});

  std::vector<GeoPoint> alight_pt(static_cast<size_t>(n));
  std::vector<GeoPoint> board_pt(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto& seg = segments[static_cast<size_t>(j)];
    const Stop& a = registry.get(seg.alight_stop);
    const Stop& b = registry.get(seg.board_stop);
    alight_pt[static_cast<size_t>(j)] = {a.lat, a.lon};
    board_pt[static_cast<size_t>(j)] = {b.lat, b.lon};
  }

  auto arc_ok = [&](int j, int k) {
    if (j == k) return false;
    const auto& sj = segments[static_cast<size_t>(j)];
    const auto& sk = segments[static_cast<size_t>(k)];
    if (sj.route_id == sk.route_id) return false;
    Seconds gap = sk.board_time - sj.alight_time;
    if (gap <= 0 || gap >= params.max_transfer_s) return false;
    return geo_distance(alight_pt[static_cast<size_t>(j)], board_pt[static_cast<size_t>(k)]) <
           params.max_walk_m;
  };

  if (!windowed) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (arc_ok(j, k)) g.succ[static_cast<size_t>(j)].push_back(k);
      }
    }
    return g;
  }

  // Heads sorted by boarding time; for tail j only heads with
  // t_j < s_k < t_j + window can qualify.
  std::vector<int> by_board(static_cast<size_t>(n));
  std::iota(by_board.begin(), by_board.end(), 0);
  std::stable_sort(by_board.begin(), by_board.end(), [&](int a, int b) {
    return segments[static_cast<size_t>(a)].board_time < segments[static_cast<size_t>(b)].board_time;
  });
  std::vector<Seconds> board_sorted(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    board_sorted[static_cast<size_t>(i)] = segments[static_cast<size_t>(by_board[static_cast<size_t>(i)])].board_time;
  }

  for (int j = 0; j < n; ++j) {
    Seconds lo = segments[static_cast<size_t>(j)].alight_time;  // need s_k > lo
    Seconds hi = lo + params.max_transfer_s;                    // need s_k < hi
    auto first = std::upper_bound(board_sorted.begin(), board_sorted.end(), lo);
    auto last = std::lower_bound(board_sorted.begin(), board_sorted.end(), hi);
    auto& row = g.succ[static_cast<size_t>(j)];
    for (auto it = first; it != last; ++it) {
      int k = by_board[static_cast<size_t>(it - board_sorted.begin())];
      if (arc_ok(j, k)) row.push_back(k);
    }
    std::sort(row.begin(), row.end());
  }
  return g;
}

}  // namespace

FeasibilityGraph build_feasibility(const std::vector<TripSegment>& segments,
                                   const StopRegistry& registry,
                                   const FeasibilityParams& params) {
  return build_impl(segments, registry, params, true);
}

FeasibilityGraph build_feasibility_naive(const std::vector<TripSegment>& segments,
                                         const StopRegistry& registry,
                                         const FeasibilityParams& params) {
  return build_impl(segments, registry, params, false);
}

TransferTargets observed_transfer_targets(const std::vector<TripSegment>& segments,
                                          const StopRegistry& registry,
                                          const TransferRates& rates) {
  std::map<std::string, std::int64_t> alight_count;
  std::int64_t other_count = 0;
  for (const auto& seg : segments) {
    const Stop& a = registry.get(seg.alight_stop);
    if (a.is_transit_center) {
      ++alight_count[a.stop_id];
    } else {
      ++other_count;
    }
  }
  TransferTargets t;
  for (const auto& [stop_id, rate] : rates.p1) {
    auto it = alight_count.find(stop_id);
    std::int64_t count = it == alight_count.end() ? 0 : it->second;
    t.delta1[stop_id] = round_half_even(rate * static_cast<double>(count));
  }
  t.delta2 = round_half_even(rates.p2 * static_cast<double>(other_count));
  t.n = t.delta2;
  for (const auto& [_, d] : t.delta1) t.n += d;
  return t;
}

void emit_feasibility_arcs(const std::string& path, const FeasibilityGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "tail_segment,head_segment\n";
  for (const auto& arc : graph.arcs()) {
    out << graph.segments[static_cast<size_t>(arc.tail)].segment_id << ','
        << graph.segments[static_cast<size_t>(arc.head)].segment_id << '\n';
  }
}

}  // namespace transitod
