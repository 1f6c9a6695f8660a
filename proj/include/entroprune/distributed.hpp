#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "entroprune/pruners.hpp"

namespace entroprune {

// Two-round divide-and-conquer pruning: split the ensemble into m balanced
// random groups, prune each group independently (simulated machines =
// concurrent workers in one process), prune the union of the group
// selections, and keep the best candidate among all group selections and
// the union selection.

// Balanced random cover of {0..n-1}: (n mod m) groups of ceil(n/m) followed
// by m*ceil(n/m)-n groups of floor(n/m). Membership is a seeded shuffle;
// each group is stored in ascending index order.
struct Partition {
    std::vector<std::vector<int>> groups;
    std::uint64_t seed = 0;
};

Partition make_partition(int n, int m, std::uint64_t seed);

enum class BestCriterion { tdas, eval_accuracy };

struct PhaseTimes {
    double partition_s = 0.0;
    double group_s = 0.0;
    double union_s = 0.0;
    double compare_s = 0.0;
    double total_s = 0.0;
};

struct DistributedResult {
    Selection best;                    // winning candidate, global indices
    std::vector<Selection> per_group;  // group candidates, global indices
    Partition partition;
    std::vector<int> union_pool;       // gathered union of group selections, ascending
    Selection union_selection;         // global indices
    int winner_group = -1;             // group id of the winner; -1 = union-round candidate
    PhaseTimes wall_times;
    // Plugin-internal candidate evaluations: summed over all plugin runs,
    // and along the critical path (slowest group, then the union round).
    std::uint64_t eval_count_total = 0;
    std::uint64_t eval_count_critical = 0;
};

// The generic two-round wrapper around any pruning plugin. Group runs are
// independent and execute on a pool of `workers` threads (0 = one per
// group). Deterministic for fixed (ensemble, params, machines, seed).
DistributedResult epfd(const EnsemblePredictions& ens, const ObjectiveParams& params, int machines,
                       const PrunerPlugin& alg, BestCriterion criterion, std::uint64_t seed,
                       int workers = 0);

// The two-round greedy objective pruner: epfd specialized to the greedy
// objective plugin with the tdas criterion.
DistributedResult domep(const EnsemblePredictions& ens, const ObjectiveParams& params, int machines,
                        std::uint64_t seed, int workers = 0);

struct SpeedupRow {
    int machines = 0;
    double centralized_time_s = 0.0;
    double distributed_time_s = 0.0;
    double speedup = 0.0;
    double efficiency = 0.0;
    std::uint64_t centralized_evals = 0;
    std::uint64_t distributed_evals_total = 0;
    std::uint64_t distributed_evals_critical = 0;
    double eval_ratio = 0.0;  // centralized_evals / distributed_evals_critical
};

// Mean wall times over `repetitions` runs of the centralized pruner vs the
// two-round version at each machine count. Eval counts are reported
// alongside as a machine-independent proxy for the measured times.
std::vector<SpeedupRow> benchmark_speedup(const EnsemblePredictions& ens, const ObjectiveParams& params,
                                          std::span<const int> m_list, int repetitions,
                                          std::uint64_t seed, int workers = 0);

}  // namespace entroprune
