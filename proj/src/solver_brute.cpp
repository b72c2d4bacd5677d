#include <algorithm>
#include <chrono>
#include <cmath>

#include "solver_common.hpp"
#include "transitod/solver.hpp"

namespace transitod {

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::ip: return "ip";
    case SolveMethod::qcp_rounded: return "qcp_rounded";
    case SolveMethod::brute_l1: return "brute_l1";
    case SolveMethod::brute_l2: return "brute_l2";
  }
  return "?";
}

double objective_l1(const TransferAssignment& assignment, const FeasibilityGraph& graph,
                    const StopRegistry& registry, const TransferTargets& targets) {
  auto grouping = detail::make_grouping(graph.segments, registry);
  auto delta = detail::group_deltas(grouping, targets);
  std::vector<std::int64_t> count(delta.size(), 0);
  for (int j = 0; j < assignment.size(); ++j) {
    if (assignment.first_leg(j)) {
      ++count[static_cast<size_t>(grouping.group_of_segment[static_cast<size_t>(j)])];
    }
  }
  std::int64_t obj = 0;
  for (size_t g = 0; g < delta.size(); ++g) obj += std::llabs(delta[g] - count[g]);
  return static_cast<double>(obj);
}

double objective_l2(const std::map<std::string, double>& p1, double p2,
                    const TransferRates& rates) {
  double obj = 0.0;
  for (const auto& [stop_id, target] : rates.p1) {
    auto it = p1.find(stop_id);
    if (it == p1.end()) continue;  // probability undefined (no alightings)
    double diff = it->second - target;
    obj += diff * diff;
  }
  double d2 = p2 - rates.p2;
  return obj + d2 * d2;
}

namespace {

struct BruteState {
  const FeasibilityGraph& graph;
  const detail::Grouping& grouping;
  const std::vector<std::int64_t>& delta;
  const std::vector<double>& rates;
  BruteObjective objective;

  std::vector<char> used;               // endpoint of a selected arc
  std::vector<std::int64_t> count;      // selected first legs per group
  std::vector<std::pair<int, int>> selected;

  double best_obj = 0.0;
  bool have_best = false;
  std::vector<std::pair<int, int>> best_arcs;
  std::int64_t leaves = 0;

  double leaf_objective() const {
    double obj = 0.0;
    if (objective == BruteObjective::l1) {
      for (size_t g = 0; g < delta.size(); ++g) {
        obj += static_cast<double>(std::llabs(delta[g] - count[g]));
      }
    } else {
      for (size_t g = 0; g < delta.size(); ++g) {
        auto n_g = grouping.alight_count[g];
        if (n_g == 0) continue;
        double p = static_cast<double>(count[g]) / static_cast<double>(n_g);
        double diff = p - rates[g];
        obj += diff * diff;
      }
    }
    return obj;
  }

  void at_leaf() {
    ++leaves;
    double obj = leaf_objective();
    if (!have_best || obj < best_obj ||
        (obj == best_obj && selected < best_arcs)) {
      have_best = true;
      best_obj = obj;
      best_arcs = selected;
    }
  }

  void recurse(int j) {
    const int n = static_cast<int>(graph.segments.size());
    if (j == n) {
      at_leaf();
      return;
    }
    // Option: j is not a first leg (it may still become a second leg later).
    recurse(j + 1);
    if (used[static_cast<size_t>(j)]) return;  // already a second leg
    for (int k : graph.succ[static_cast<size_t>(j)]) {
      if (used[static_cast<size_t>(k)]) continue;
      used[static_cast<size_t>(j)] = 1;
      used[static_cast<size_t>(k)] = 1;
      ++count[static_cast<size_t>(grouping.group_of_segment[static_cast<size_t>(j)])];
      selected.emplace_back(j, k);
      recurse(j + 1);
      selected.pop_back();
      --count[static_cast<size_t>(grouping.group_of_segment[static_cast<size_t>(j)])];
      used[static_cast<size_t>(j)] = 0;
      used[static_cast<size_t>(k)] = 0;
    }
  }

};

}  // namespace

IpResult solve_brute(const FeasibilityGraph& graph, const StopRegistry& registry,
                     const TransferRates& rates, const TransferTargets& targets,
                     BruteObjective objective) {
  const int n = static_cast<int>(graph.segments.size());
  if (n > 16) {
    throw std::runtime_error("solve_brute refuses instances above 16 segments (got " +
                             std::to_string(n) + ")");
  }
  auto start = std::chrono::steady_clock::now();
  auto grouping = detail::make_grouping(graph.segments, registry);
  auto delta = detail::group_deltas(grouping, targets);
  auto grates = detail::group_rates(grouping, rates);

  BruteState state{graph, grouping, delta, grates, objective, {}, {}, {}, 0.0, false, {}, 0};
  state.used.assign(static_cast<size_t>(n), 0);
  state.count.assign(delta.size(), 0);
  state.recurse(0);

  IpResult result;
  result.assignment.transfer_to.assign(static_cast<size_t>(n), std::nullopt);
  for (const auto& [j, k] : state.best_arcs) {
    result.assignment.transfer_to[static_cast<size_t>(j)] = k;
  }
  result.report.objective = state.best_obj;
  result.report.method =
      objective == BruteObjective::l1 ? SolveMethod::brute_l1 : SolveMethod::brute_l2;
  result.report.nodes = state.leaves;
  result.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace transitod
