#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "transitod/model.hpp"

namespace transitod {

enum class SolveMethod { ip, qcp_rounded, brute_l1, brute_l2 };

std::string to_string(SolveMethod m);

struct SolverReport {
  double objective = 0.0;
  double wall_time_s = 0.0;
  SolveMethod method = SolveMethod::ip;
  std::int64_t nodes = 0;  // search nodes or solver iterations

  // Key-value text block for the run log.
  std::string to_kv_text() const;
};

struct IpResult {
  TransferAssignment assignment;
  SolverReport report;
};

// Exact minimizer of the L1 transfer-count objective over node-disjoint
// arc sets. Any optimum selects at most delta_g first legs per alighting
// group (dropping an over-quota arc always improves the objective by 1),
// so the problem reduces to maximum-cardinality matching under per-group
// tail quotas and the optimal objective equals n - |matching|. Solved by
// branch and bound: the bound is a bipartite relaxation (tail and head
// roles decoupled) computed as a max flow, and branching forbids one role
// of a segment the relaxation uses in both.
IpResult solve_ip(const FeasibilityGraph& graph, const StopRegistry& registry,
                  const TransferTargets& targets);

struct QcpStats {
  std::int64_t iterations = 0;
  double gap = 0.0;  // certified duality gap at termination
  double wall_time_s = 0.0;
};

class QcpNonConvergence : public std::runtime_error {
 public:
  QcpNonConvergence(FractionalSolution best, double residual, std::int64_t iterations);
  const FractionalSolution& best() const { return best_; }
  double residual() const { return residual_; }
  std::int64_t iterations() const { return iterations_; }

 private:
  FractionalSolution best_;
  double residual_;
  std::int64_t iterations_;
};

// Convex relaxation of the transfer-probability program. Returns a feasible
// fractional solution whose objective is within tol of the constrained
// optimum, certified by a Lagrangian dual bound; the objective is therefore
// also a lower bound (up to tol) on any integral solution's L2 objective.
// Throws QcpNonConvergence when the gap cannot be closed within the
// iteration cap.
FractionalSolution solve_qcp(const FeasibilityGraph& graph, const StopRegistry& registry,
                             const TransferRates& rates, double tol, QcpStats* stats = nullptr);

// Feasible rounding of a fractional solution: first legs are the segments
// above the x* threshold, second legs the n best by accumulated inbound
// probability (ties broken by segment index), and each surviving first leg
// carries a normalized distribution over its feasible second legs. First
// legs left without any candidate mass are demoted to singletons. Total:
// never fails on a feasible input.
RoundedSolution round_relaxation(const FractionalSolution& frac, const FeasibilityGraph& graph,
                                 const TransferTargets& targets);

enum class BruteObjective { l1, l2 };

// Exhaustive enumeration of every node-disjoint arc subset; the oracle the
// other solvers are tested against. Refuses instances above 16 segments.
IpResult solve_brute(const FeasibilityGraph& graph, const StopRegistry& registry,
                     const TransferRates& rates, const TransferTargets& targets,
                     BruteObjective objective);

// L1 deviation between targeted and realized first-leg counts.
double objective_l1(const TransferAssignment& assignment, const FeasibilityGraph& graph,
                    const StopRegistry& registry, const TransferTargets& targets);

// L2 deviation between calculated and observed transfer probabilities.
// Centers missing from p1 (no alighting segments, probability undefined)
// are skipped.
double objective_l2(const std::map<std::string, double>& p1, double p2,
                    const TransferRates& rates);

}  // namespace transitod
