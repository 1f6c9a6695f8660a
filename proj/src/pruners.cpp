#include "entroprune/pruners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "entroprune/rng.hpp"

namespace entroprune {

namespace {

// Clamp k to n (never an error: the distributed second round may hand a
// pruner fewer than k classifiers).
int effective_k(const EnsemblePredictions& ens, const ObjectiveParams& params, bool& clamped) {
    params.validate();
    clamped = params.k > ens.n();
    return clamped ? ens.n() : params.k;
}

std::vector<int> all_indices(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

// Per-instance class-vote counts for a growing subset; lets the greedy
// accuracy pruner score a candidate without re-voting the whole subset.
class VoteTally {
public:
    VoteTally(std::size_t d, int n_c) : n_c_(n_c), counts_(d * n_c, 0) {}

    void add(const LabelVector& row) {
        for (std::size_t t = 0; t < row.size(); ++t) ++counts_[t * n_c_ + row[t]];
    }

    // Accuracy of majority vote over (current subset + candidate row);
    // vote ties resolve toward the smallest class id.
    double accuracy_with(const LabelVector& candidate, const LabelVector& truth) const {
        std::size_t correct = 0;
        for (std::size_t t = 0; t < truth.size(); ++t) {
            int best_class = 0;
            int best_votes = -1;
            for (int c = 0; c < n_c_; ++c) {
                const int votes = counts_[t * n_c_ + c] + (candidate[t] == c ? 1 : 0);
                if (votes > best_votes) {
                    best_votes = votes;
                    best_class = c;
                }
            }
            if (best_class == truth[t]) ++correct;
        }
        return static_cast<double>(correct) / static_cast<double>(truth.size());
    }

private:
    int n_c_;
    std::vector<int> counts_;
};

}  // namespace

std::vector<int> Selection::sorted_indices() const {
    std::vector<int> v = indices;
    std::sort(v.begin(), v.end());
    return v;
}

Selection comep(const EnsemblePredictions& ens, const ObjectiveParams& params, SeedRule seed_rule,
                std::uint64_t seed) {
    Selection sel;
    const int k = effective_k(ens, params, sel.k_clamped);
    const int n = ens.n();
    TdacCache cache(ens, params.lambda);

    std::vector<int> remaining = all_indices(n);
    auto take = [&](int idx) {
        sel.indices.push_back(idx);
        remaining.erase(std::find(remaining.begin(), remaining.end(), idx));
    };

    if (seed_rule == SeedRule::seeded_random) {
        Rng rng(seed);
        take(remaining[static_cast<std::size_t>(rng.bounded(n))]);
    } else {
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (cache.mi_to_labels(i) > cache.mi_to_labels(best)) best = i;
        take(best);
    }

    for (int step = 2; step <= k; ++step) {
        int best = -1;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (int cand : remaining) {
            double gain = 0.0;
            for (int j : sel.indices) gain += cache.tdac(cand, j);
            sel.eval_count += sel.indices.size();
            if (gain > best_gain) {
                best_gain = gain;
                best = cand;
            }
        }
        take(best);
    }

    sel.tdas = cache.tdas(sel.indices);
    return sel;
}

Selection reduce_error_pruner(const EnsemblePredictions& ens, const ObjectiveParams& params,
                              const LabelVector& eval_labels) {
    if (eval_labels.size() != ens.d())
        throw std::invalid_argument("evaluation labels must match the prediction length");
    Selection sel;
    const int k = effective_k(ens, params, sel.k_clamped);
    const int n = ens.n();

    VoteTally tally(ens.d(), ens.n_classes());
    std::vector<int> remaining = all_indices(n);

    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_acc = -1.0;
        for (int cand : remaining) {
            const double acc = tally.accuracy_with(ens.row(cand), eval_labels);
            ++sel.eval_count;
            if (acc > best_acc) {
                best_acc = acc;
                best = cand;
            }
        }
        tally.add(ens.row(best));
        sel.indices.push_back(best);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }

    sel.tdas = tdas_pairwise(ens, sel.indices, params.lambda);
    return sel;
}

double cohen_kappa(std::span<const Label> x, std::span<const Label> y) {
    const ContingencyTable t = ContingencyTable::from(x, y);
    const double d = static_cast<double>(t.total);
    double po = 0.0;
    for (int c = 0; c < t.n_c; ++c) po += static_cast<double>(t.joint(c, c));
    po /= d;
    double pe = 0.0;
    for (int c = 0; c < t.n_c; ++c)
        pe += (static_cast<double>(t.marginals_x[c]) / d) * (static_cast<double>(t.marginals_y[c]) / d);
    if (pe >= 1.0) return 1.0;  // both vectors constant on the same class
    return (po - pe) / (1.0 - pe);
}

Selection kappa_pruner(const EnsemblePredictions& ens, const ObjectiveParams& params) {
    Selection sel;
    const int k = effective_k(ens, params, sel.k_clamped);
    const int n = ens.n();

    if (n == 1) {
        sel.indices = {0};
        sel.tdas = 0.0;
        return sel;
    }

    std::vector<double> kappa(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = cohen_kappa(ens.row(i), ens.row(j));
            kappa[static_cast<std::size_t>(i) * n + j] = v;
            kappa[static_cast<std::size_t>(j) * n + i] = v;
            ++sel.eval_count;
        }
    }

    int seed_a = 0, seed_b = 1;
    double best_pair = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (kappa[static_cast<std::size_t>(i) * n + j] < best_pair) {
                best_pair = kappa[static_cast<std::size_t>(i) * n + j];
                seed_a = i;
                seed_b = j;
            }
        }
    }

    std::vector<int> remaining = all_indices(n);
    auto take = [&](int idx) {
        sel.indices.push_back(idx);
        remaining.erase(std::find(remaining.begin(), remaining.end(), idx));
    };

    take(seed_a);
    if (k >= 2) take(seed_b);

    while (static_cast<int>(sel.indices.size()) < k) {
        int best = -1;
        double best_sum = std::numeric_limits<double>::infinity();
        for (int cand : remaining) {
            double sum = 0.0;
            for (int j : sel.indices) sum += kappa[static_cast<std::size_t>(cand) * n + j];
            sel.eval_count += sel.indices.size();
            if (sum < best_sum) {
                best_sum = sum;
                best = cand;
            }
        }
        take(best);
    }

    sel.tdas = tdas_pairwise(ens, sel.indices, params.lambda);
    return sel;
}

Selection random_pruner(const EnsemblePredictions& ens, const ObjectiveParams& params,
                        std::uint64_t seed) {
    Selection sel;
    const int k = effective_k(ens, params, sel.k_clamped);
    const int n = ens.n();

    Rng rng(seed);
    std::vector<int> pool = all_indices(n);
    for (int t = 0; t < k; ++t) {
        const int j = t + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - t)));
        std::swap(pool[t], pool[j]);
        sel.indices.push_back(pool[t]);
    }

    sel.tdas = tdas_pairwise(ens, sel.indices, params.lambda);
    return sel;
}

PluginRegistry PluginRegistry::with_builtins() {
    PluginRegistry reg;
    reg.add({"comep", [](const EnsemblePredictions& ens, const ObjectiveParams& params, std::uint64_t) {
                 return comep(ens, params);
             }});
    reg.add({"reduce-error",
             [](const EnsemblePredictions& ens, const ObjectiveParams& params, std::uint64_t) {
                 return reduce_error_pruner(ens, params, ens.labels());
             }});
    reg.add({"kappa", [](const EnsemblePredictions& ens, const ObjectiveParams& params, std::uint64_t) {
                 return kappa_pruner(ens, params);
             }});
    reg.add({"random", [](const EnsemblePredictions& ens, const ObjectiveParams& params, std::uint64_t seed) {
                 return random_pruner(ens, params, seed);
             }});
    return reg;
}

void PluginRegistry::add(PrunerPlugin plugin) {
    plugins_[plugin.name] = std::move(plugin);
}

bool PluginRegistry::contains(const std::string& name) const {
    return plugins_.count(name) > 0;
}

const PrunerPlugin& PluginRegistry::get(const std::string& name) const {
    auto it = plugins_.find(name);
    if (it == plugins_.end()) throw std::invalid_argument("unknown pruner plugin: " + name);
    return it->second;
}

std::vector<std::string> PluginRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(plugins_.size());
    for (const auto& [name, _] : plugins_) out.push_back(name);
    return out;
}

}  // namespace entroprune
