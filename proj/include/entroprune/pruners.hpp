#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "entroprune/objective.hpp"

namespace entroprune {

// A pruned sub-ensemble. `indices` preserves selection order; `tdas` is the
// subset's objective value at the lambda the pruner ran with. `eval_count`
// instruments the pruner's candidate scans: for the greedy objective pruner
// it is the number of pairwise tdac terms summed across all argmax scans,
// for the baseline pruners it counts their own candidate evaluations.
struct Selection {
    std::vector<int> indices;
    double tdas = 0.0;
    std::uint64_t eval_count = 0;
    bool k_clamped = false;  // set when k > n forced a clamp to n

    std::vector<int> sorted_indices() const;
};

// First-pick rule for the greedy objective pruner. The default anchors on
// the classifier most informative about the labels; `seeded_random` exists
// for ablation runs.
enum class SeedRule { best_mi, seeded_random };

// Greedy maximization of the subset objective: seed one classifier, then
// repeatedly add the candidate with the largest summed tdac to the current
// selection, ties toward the smallest index. k > n clamps to n.
Selection comep(const EnsemblePredictions& ens, const ObjectiveParams& params,
                SeedRule seed_rule = SeedRule::best_mi, std::uint64_t seed = 0);

// Greedy forward selection maximizing majority-vote accuracy of the growing
// subset against `eval_labels`; ties toward the smallest index.
Selection reduce_error_pruner(const EnsemblePredictions& ens, const ObjectiveParams& params,
                              const LabelVector& eval_labels);

// Greedy diversity baseline: seed with the pair of lowest Cohen's kappa,
// then repeatedly add the candidate minimizing the summed kappa to the
// current selection. Ties toward the smallest index (pair, then element).
Selection kappa_pruner(const EnsemblePredictions& ens, const ObjectiveParams& params);

// Uniform k-subset from a seeded generator; selection order is draw order.
Selection random_pruner(const EnsemblePredictions& ens, const ObjectiveParams& params,
                        std::uint64_t seed);

// Chance-corrected agreement between two label vectors. Returns 1 when the
// expected agreement is already 1 (two identical constant vectors).
double cohen_kappa(std::span<const Label> x, std::span<const Label> y);

// Contract any pruning algorithm must satisfy to run under the distributed
// wrapper: deterministic given (inputs, seed), and the returned Selection
// holds distinct in-range indices with |indices| <= min(k, n).
struct PrunerPlugin {
    std::string name;
    std::function<Selection(const EnsemblePredictions&, const ObjectiveParams&, std::uint64_t seed)> prune;
};

// Name-keyed plugin lookup. `with_builtins()` registers "comep",
// "reduce-error", "kappa" and "random".
class PluginRegistry {
public:
    static PluginRegistry with_builtins();

    void add(PrunerPlugin plugin);
    bool contains(const std::string& name) const;
    const PrunerPlugin& get(const std::string& name) const;  // throws on unknown name
    std::vector<std::string> names() const;

private:
    std::map<std::string, PrunerPlugin> plugins_;
};

}  // namespace entroprune
