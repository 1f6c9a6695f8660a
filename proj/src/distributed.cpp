#include "entroprune/distributed.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "entroprune/ensemble_io.hpp"
#include "entroprune/rng.hpp"

namespace entroprune {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Selection map_to_global(Selection local, const std::vector<int>& global_ids) {
    for (int& idx : local.indices) idx = global_ids[idx];
    return local;
}

// Candidates carry their objective value already (part of the plugin
// contract), so the tdas criterion reads it straight off the Selection.
double candidate_score(const EnsemblePredictions& ens, const Selection& candidate,
                       BestCriterion criterion) {
    if (criterion == BestCriterion::tdas) return candidate.tdas;
    return accuracy(majority_vote(ens, candidate.indices), ens.labels());
}

}  // namespace

Partition make_partition(int n, int m, std::uint64_t seed) {
    if (m < 1 || m > n) throw std::invalid_argument("machine count must satisfy 1 <= m <= n");
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    const int ceil_size = (n + m - 1) / m;
    const int floor_size = n / m;
    const int num_large = n % m;  // m*ceil(n/m) - n groups get the floor size

    Partition part;
    part.seed = seed;
    part.groups.reserve(m);
    int cursor = 0;
    for (int g = 0; g < m; ++g) {
        const int size = g < num_large ? ceil_size : floor_size;
        std::vector<int> group(order.begin() + cursor, order.begin() + cursor + size);
        std::sort(group.begin(), group.end());
        part.groups.push_back(std::move(group));
        cursor += size;
    }
    return part;
}

DistributedResult epfd(const EnsemblePredictions& ens, const ObjectiveParams& params, int machines,
                       const PrunerPlugin& alg, BestCriterion criterion, std::uint64_t seed,
                       int workers) {
    params.validate();
    if (!alg.prune) throw std::invalid_argument("pruner plugin has no prune function");
    const auto t_start = Clock::now();

    DistributedResult result;
    result.partition = make_partition(ens.n(), machines, seed);
    result.wall_times.partition_s = seconds_since(t_start);

    const int m = machines;
    if (workers <= 0) workers = m;
    workers = std::min(workers, m);

    // First round: prune every group independently on the worker pool.
    // Results land in per-group slots, so scheduling order cannot affect
    // the outcome.
    const auto t_group = Clock::now();
    result.per_group.assign(m, Selection{});
    auto run_group = [&](int gid) {
        const std::vector<int>& group = result.partition.groups[gid];
        const EnsemblePredictions sub = ens.subset(group);
        Selection local = alg.prune(sub, params, derive_seed(seed, static_cast<std::uint64_t>(gid)));
        result.per_group[gid] = map_to_global(std::move(local), group);
    };
    if (workers <= 1) {
        for (int gid = 0; gid < m; ++gid) run_group(gid);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const int gid = next.fetch_add(1);
                    if (gid >= m) return;
                    run_group(gid);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    result.wall_times.group_s = seconds_since(t_group);

    // Second round: gather and prune the union of the group selections.
    const auto t_union = Clock::now();
    for (const Selection& sel : result.per_group)
        result.union_pool.insert(result.union_pool.end(), sel.indices.begin(), sel.indices.end());
    std::sort(result.union_pool.begin(), result.union_pool.end());
    {
        const EnsemblePredictions sub = ens.subset(result.union_pool);
        Selection local = alg.prune(sub, params, derive_seed(seed, static_cast<std::uint64_t>(m)));
        result.union_selection = map_to_global(std::move(local), result.union_pool);
    }
    result.wall_times.union_s = seconds_since(t_union);

    // Compare: the union candidate wins ties, then the lowest group id.
    const auto t_compare = Clock::now();
    result.winner_group = -1;
    result.best = result.union_selection;
    double best_score = candidate_score(ens, result.union_selection, criterion);
    for (int gid = 0; gid < m; ++gid) {
        const double score = candidate_score(ens, result.per_group[gid], criterion);
        if (score > best_score) {
            best_score = score;
            result.best = result.per_group[gid];
            result.winner_group = gid;
        }
    }
    result.wall_times.compare_s = seconds_since(t_compare);

    std::uint64_t max_group_evals = 0;
    for (const Selection& sel : result.per_group) {
        result.eval_count_total += sel.eval_count;
        max_group_evals = std::max(max_group_evals, sel.eval_count);
    }
    result.eval_count_total += result.union_selection.eval_count;
    result.eval_count_critical = max_group_evals + result.union_selection.eval_count;

    result.wall_times.total_s = seconds_since(t_start);
    return result;
}

DistributedResult domep(const EnsemblePredictions& ens, const ObjectiveParams& params, int machines,
                        std::uint64_t seed, int workers) {
    const PrunerPlugin greedy{"comep",
                              [](const EnsemblePredictions& e, const ObjectiveParams& p, std::uint64_t) {
                                  return comep(e, p);
                              }};
    return epfd(ens, params, machines, greedy, BestCriterion::tdas, seed, workers);
}

std::vector<SpeedupRow> benchmark_speedup(const EnsemblePredictions& ens, const ObjectiveParams& params,
                                          std::span<const int> m_list, int repetitions,
                                          std::uint64_t seed, int workers) {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
    params.validate();

    double centralized_mean = 0.0;
    std::uint64_t centralized_evals = 0;
    for (int rep = 0; rep < repetitions; ++rep) {
        const auto t0 = Clock::now();
        const Selection sel = comep(ens, params);
        centralized_mean += seconds_since(t0);
        centralized_evals = sel.eval_count;
    }
    centralized_mean /= repetitions;

    std::vector<SpeedupRow> rows;
    rows.reserve(m_list.size());
    for (int m : m_list) {
        SpeedupRow row;
        row.machines = m;
        row.centralized_time_s = centralized_mean;
        row.centralized_evals = centralized_evals;
        double mean = 0.0;
        for (int rep = 0; rep < repetitions; ++rep) {
            const auto t0 = Clock::now();
            const DistributedResult res =
                domep(ens, params, m, derive_seed(seed, static_cast<std::uint64_t>(rep)), workers);
            mean += seconds_since(t0);
            row.distributed_evals_total = res.eval_count_total;
            row.distributed_evals_critical = res.eval_count_critical;
        }
        row.distributed_time_s = mean / repetitions;
        row.speedup = row.centralized_time_s / row.distributed_time_s;
        row.efficiency = row.speedup / m;
        row.eval_ratio = static_cast<double>(row.centralized_evals) /
                         static_cast<double>(row.distributed_evals_critical);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace entroprune
