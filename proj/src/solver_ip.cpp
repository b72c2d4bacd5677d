#include <algorithm>
#include <chrono>
#include <queue>

#include "solver_common.hpp"
#include "transitod/solver.hpp"

namespace transitod {

namespace {

// Dinic max flow. Deterministic: edges are visited in construction order.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count)
      : head_(static_cast<size_t>(node_count), -1), level_(static_cast<size_t>(node_count)),
        iter_(static_cast<size_t>(node_count)) {}

  int add_edge(int from, int to, std::int64_t cap) {
    int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[static_cast<size_t>(from)]);
    head_[static_cast<size_t>(from)] = id;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[static_cast<size_t>(to)]);
    head_[static_cast<size_t>(to)] = id + 1;
    return id;
  }

  std::int64_t flow_on(int edge_id) const { return cap_[static_cast<size_t>(edge_id) + 1]; }

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (std::int64_t pushed = dfs(s, t, INT64_MAX)) total += pushed;
    }
    return total;
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e = head_[static_cast<size_t>(v)]; e >= 0; e = next_[static_cast<size_t>(e)]) {
        int u = to_[static_cast<size_t>(e)];
        if (cap_[static_cast<size_t>(e)] > 0 && level_[static_cast<size_t>(u)] < 0) {
          level_[static_cast<size_t>(u)] = level_[static_cast<size_t>(v)] + 1;
          q.push(u);
        }
      }
    }
    return level_[static_cast<size_t>(t)] >= 0;
  }

  // The layered graph here has depth at most 4 (source, group, tail, head,
  // sink), so recursion depth is bounded.
  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t) return limit;
    for (int& e = iter_[static_cast<size_t>(v)]; e >= 0; e = next_[static_cast<size_t>(e)]) {
      int u = to_[static_cast<size_t>(e)];
      if (cap_[static_cast<size_t>(e)] <= 0 ||
          level_[static_cast<size_t>(u)] != level_[static_cast<size_t>(v)] + 1) {
        continue;
      }
      std::int64_t pushed = dfs(u, t, std::min(limit, cap_[static_cast<size_t>(e)]));
      if (pushed > 0) {
        cap_[static_cast<size_t>(e)] -= pushed;
        cap_[static_cast<size_t>(e ^ 1)] += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<int> head_;
  std::vector<int> to_;
  std::vector<std::int64_t> cap_;
  std::vector<int> next_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

struct Arc {
  int tail;
  int head;
  int group;
};

// Branch-and-bound search for a maximum-cardinality matching under
// per-group tail quotas. A segment may be the tail of one selected arc or
// the head of one, never both; branching removes one of the two roles from
// a segment the relaxed solution used twice.
class IpSearch {
 public:
  IpSearch(int n, std::vector<Arc> arcs, std::vector<std::int64_t> delta,
           std::vector<int> group_of_segment)
      : n_(n), arcs_(std::move(arcs)), delta_(std::move(delta)),
        group_of_(std::move(group_of_segment)), tail_allowed_(static_cast<size_t>(n), 1),
        head_allowed_(static_cast<size_t>(n), 1) {
    out_arcs_.assign(static_cast<size_t>(n_), {});
    for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
      out_arcs_[static_cast<size_t>(arcs_[static_cast<size_t>(a)].tail)].push_back(a);
    }
    for (auto d : delta_) target_total_ += d;
  }

  std::vector<std::pair<int, int>> solve(std::int64_t* nodes_out) {
    best_cost_ = target_total_;  // the empty assignment is always feasible
    best_arcs_.clear();
    nodes_ = 0;
    if (target_total_ > 0 && !arcs_.empty()) branch_and_bound();
    *nodes_out = nodes_;
    return best_arcs_;
  }

 private:
  struct Frame {
    int v;
    int phase;  // 0: tail forbidden is active, 1: head forbidden is active
  };

  void branch_and_bound() {
    std::vector<Frame> stack;
    while (true) {
      int conflict = evaluate_node();
      if (conflict >= 0 && best_cost_ > 0) {
        tail_allowed_[static_cast<size_t>(conflict)] = 0;
        stack.push_back(Frame{conflict, 0});
        continue;
      }
      // Leaf or pruned: backtrack to the next unexplored branch.
      bool descended = false;
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.phase == 0) {
          tail_allowed_[static_cast<size_t>(f.v)] = 1;
          if (best_cost_ == 0) {
            stack.pop_back();
            continue;
          }
          f.phase = 1;
          head_allowed_[static_cast<size_t>(f.v)] = 0;
          descended = true;
          break;
        }
        head_allowed_[static_cast<size_t>(f.v)] = 1;
        stack.pop_back();
      }
      if (!descended) return;
    }
  }

  // Evaluates the current restriction set: computes the relaxation bound,
  // updates the incumbent, and returns the segment to branch on (-1 when
  // the node is solved or pruned).
  int evaluate_node() {
    ++nodes_;
    std::int64_t ub = relaxation();
    if (target_total_ - ub >= best_cost_) return -1;
    repair();

    scratch_role_.assign(static_cast<size_t>(n_), 0);
    int conflict = -1;
    for (const auto& [j, k] : pairs_) {
      scratch_role_[static_cast<size_t>(j)] |= 1;
      scratch_role_[static_cast<size_t>(k)] |= 2;
    }
    for (int v = 0; v < n_; ++v) {
      if (scratch_role_[static_cast<size_t>(v)] == 3) {
        conflict = v;
        break;
      }
    }
    if (conflict < 0) {
      std::int64_t cost = target_total_ - ub;
      if (cost < best_cost_) {
        best_cost_ = cost;
        best_arcs_ = pairs_;
        std::sort(best_arcs_.begin(), best_arcs_.end());
      }
      return -1;
    }
    return conflict;
  }

  // Bipartite relaxation: tail and head roles decoupled, quotas capped at
  // the source. The integral max flow bounds the quota-matching size.
  std::int64_t relaxation() {
    const int s = 0;
    const int group_base = 1;
    const int groups = static_cast<int>(delta_.size());
    const int tail_base = group_base + groups;
    const int head_base = tail_base + n_;
    const int t = head_base + n_;
    MaxFlow flow(t + 1);
    for (int g = 0; g < groups; ++g) {
      if (delta_[static_cast<size_t>(g)] > 0) {
        flow.add_edge(s, group_base + g, delta_[static_cast<size_t>(g)]);
      }
    }
    scratch_tail_edge_.assign(static_cast<size_t>(n_), 0);
    scratch_head_edge_.assign(static_cast<size_t>(n_), 0);
    scratch_arc_edge_.assign(arcs_.size(), -1);
    for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
      const Arc& arc = arcs_[static_cast<size_t>(a)];
      if (!tail_allowed_[static_cast<size_t>(arc.tail)] ||
          !head_allowed_[static_cast<size_t>(arc.head)]) {
        continue;
      }
      if (delta_[static_cast<size_t>(arc.group)] == 0) continue;
      if (!scratch_tail_edge_[static_cast<size_t>(arc.tail)]) {
        scratch_tail_edge_[static_cast<size_t>(arc.tail)] = 1;
        flow.add_edge(group_base + arc.group, tail_base + arc.tail, 1);
      }
      if (!scratch_head_edge_[static_cast<size_t>(arc.head)]) {
        scratch_head_edge_[static_cast<size_t>(arc.head)] = 1;
        flow.add_edge(head_base + arc.head, t, 1);
      }
      scratch_arc_edge_[static_cast<size_t>(a)] =
          flow.add_edge(tail_base + arc.tail, head_base + arc.head, 1);
    }
    std::int64_t value = flow.run(s, t);
    pairs_.clear();
    for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
      int e = scratch_arc_edge_[static_cast<size_t>(a)];
      if (e >= 0 && flow.flow_on(e) > 0) {
        pairs_.emplace_back(arcs_[static_cast<size_t>(a)].tail, arcs_[static_cast<size_t>(a)].head);
      }
    }
    return value;
  }

  // Builds a feasible incumbent from pairs_: greedy conflict-free subset,
  // then augmenting paths that re-point heads until quotas are met or no
  // path remains.
  void repair() {
    chosen_head_.assign(static_cast<size_t>(n_), -1);
    head_owner_.assign(static_cast<size_t>(n_), -1);
    count_.assign(delta_.size(), 0);
    std::int64_t size = 0;
    for (const auto& [j, k] : pairs_) {
      if (chosen_head_[static_cast<size_t>(j)] >= 0 || head_owner_[static_cast<size_t>(j)] >= 0)
        continue;
      if (chosen_head_[static_cast<size_t>(k)] >= 0 || head_owner_[static_cast<size_t>(k)] >= 0)
        continue;
      int g = group_of_[static_cast<size_t>(j)];
      if (count_[static_cast<size_t>(g)] >= delta_[static_cast<size_t>(g)]) continue;
      chosen_head_[static_cast<size_t>(j)] = k;
      head_owner_[static_cast<size_t>(k)] = j;
      ++count_[static_cast<size_t>(g)];
      ++size;
    }
    visit_mark_.assign(static_cast<size_t>(n_), -1);
    int stamp = 0;
    for (int g = 0; g < static_cast<int>(delta_.size()); ++g) {
      if (delta_[static_cast<size_t>(g)] == 0) continue;
      for (int j = 0; j < n_ && count_[static_cast<size_t>(g)] < delta_[static_cast<size_t>(g)];
           ++j) {
        if (group_of_[static_cast<size_t>(j)] != g) continue;
        if (!tail_allowed_[static_cast<size_t>(j)]) continue;
        if (out_arcs_[static_cast<size_t>(j)].empty()) continue;
        if (chosen_head_[static_cast<size_t>(j)] >= 0 || head_owner_[static_cast<size_t>(j)] >= 0)
          continue;
        ++stamp;
        if (augment(j, stamp)) {
          ++count_[static_cast<size_t>(g)];
          ++size;
        }
      }
    }
    std::int64_t cost = target_total_ - size;
    if (cost < best_cost_) {
      best_cost_ = cost;
      best_arcs_.clear();
      for (int j = 0; j < n_; ++j) {
        if (chosen_head_[static_cast<size_t>(j)] >= 0) {
          best_arcs_.emplace_back(j, chosen_head_[static_cast<size_t>(j)]);
        }
      }
    }
  }

  struct PathFrame {
    int j;
    size_t pos;
    int via_head;  // head candidate the parent was probing when it descended
  };

  // Kuhn-style alternating search, iterative to keep the stack flat. Heads
  // currently serving as tails are never considered: tails stay fixed, so
  // group counts are unaffected by re-pointing.
  bool augment(int root, int stamp) {
    aug_stack_.clear();
    aug_stack_.push_back({root, 0, -1});
    while (!aug_stack_.empty()) {
      PathFrame f = aug_stack_.back();
      const auto& out = out_arcs_[static_cast<size_t>(f.j)];
      bool descended = false;
      size_t pos = f.pos;
      for (; pos < out.size(); ++pos) {
        const Arc& arc = arcs_[static_cast<size_t>(out[pos])];
        int k = arc.head;
        if (!head_allowed_[static_cast<size_t>(k)]) continue;
        if (chosen_head_[static_cast<size_t>(k)] >= 0) continue;  // k is a tail
        if (visit_mark_[static_cast<size_t>(k)] == stamp) continue;
        visit_mark_[static_cast<size_t>(k)] = stamp;
        int owner = head_owner_[static_cast<size_t>(k)];
        if (owner < 0) {
          // Free head: commit the whole alternating path.
          aug_stack_.back().pos = pos;
          int carry = k;
          for (int i = static_cast<int>(aug_stack_.size()) - 1; i >= 0; --i) {
            chosen_head_[static_cast<size_t>(aug_stack_[static_cast<size_t>(i)].j)] = carry;
            head_owner_[static_cast<size_t>(carry)] = aug_stack_[static_cast<size_t>(i)].j;
            carry = aug_stack_[static_cast<size_t>(i)].via_head;
          }
          return true;
        }
        aug_stack_.back().pos = pos;  // resume here after the child fails
        aug_stack_.push_back({owner, 0, k});
        descended = true;
        break;
      }
      if (!descended) {
        aug_stack_.pop_back();
      }
    }
    return false;
  }

  int n_;
  std::vector<Arc> arcs_;
  std::vector<std::int64_t> delta_;
  std::vector<int> group_of_;
  std::int64_t target_total_ = 0;

  std::vector<char> tail_allowed_;
  std::vector<char> head_allowed_;
  std::vector<std::vector<int>> out_arcs_;

  std::int64_t best_cost_ = 0;
  std::vector<std::pair<int, int>> best_arcs_;
  std::int64_t nodes_ = 0;

  // Scratch reused across nodes.
  std::vector<std::pair<int, int>> pairs_;
  std::vector<char> scratch_role_;
  std::vector<char> scratch_tail_edge_;
  std::vector<char> scratch_head_edge_;
  std::vector<int> scratch_arc_edge_;
  std::vector<int> chosen_head_;
  std::vector<int> head_owner_;
  std::vector<std::int64_t> count_;
  std::vector<int> visit_mark_;
  std::vector<PathFrame> aug_stack_;
};

}  // namespace

IpResult solve_ip(const FeasibilityGraph& graph, const StopRegistry& registry,
                  const TransferTargets& targets) {
  auto start = std::chrono::steady_clock::now();
  auto grouping = detail::make_grouping(graph.segments, registry);
  auto delta = detail::group_deltas(grouping, targets);

  std::vector<Arc> arcs;
  arcs.reserve(graph.arc_count());
  for (int j = 0; j < static_cast<int>(graph.succ.size()); ++j) {
    for (int k : graph.succ[static_cast<size_t>(j)]) {
      arcs.push_back(Arc{j, k, grouping.group_of_segment[static_cast<size_t>(j)]});
    }
  }

  IpSearch search(static_cast<int>(graph.segments.size()), std::move(arcs), delta,
                  grouping.group_of_segment);
  std::int64_t nodes = 0;
  auto selected = search.solve(&nodes);

  IpResult result;
  result.assignment.transfer_to.assign(graph.segments.size(), std::nullopt);
  std::vector<std::int64_t> count(delta.size(), 0);
  for (const auto& [j, k] : selected) {
    result.assignment.transfer_to[static_cast<size_t>(j)] = k;
    ++count[static_cast<size_t>(grouping.group_of_segment[static_cast<size_t>(j)])];
  }
  std::int64_t obj = 0;
  for (size_t g = 0; g < delta.size(); ++g) obj += std::llabs(delta[g] - count[g]);
  result.report.objective = static_cast<double>(obj);
  result.report.method = SolveMethod::ip;
  result.report.nodes = nodes;
  result.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace transitod
