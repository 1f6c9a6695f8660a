#pragma once

// Test-only oracles. Everything here recomputes expected values through a
// deliberately different path from the library (ordered-map counting,
// formula-direct entropies, recursive subset enumeration) so the suites
// never assert an implementation against itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "entroprune/entropy.hpp"
#include "entroprune/objective.hpp"
#include "entroprune/rng.hpp"

namespace oracle {

using entroprune::Label;
using entroprune::LabelVector;

inline double entropy(const LabelVector& x) {
    std::map<Label, std::int64_t> counts;
    for (Label v : x) ++counts[v];
    double h = 0.0;
    for (const auto& [_, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(x.size());
        h -= p * std::log2(p);
    }
    return h;
}

inline double joint_entropy(const LabelVector& x, const LabelVector& y) {
    std::map<std::pair<Label, Label>, std::int64_t> counts;
    for (std::size_t i = 0; i < x.size(); ++i) ++counts[{x[i], y[i]}];
    double h = 0.0;
    for (const auto& [_, c] : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(x.size());
        h -= p * std::log2(p);
    }
    return h;
}

inline double mutual_information(const LabelVector& x, const LabelVector& y) {
    const double mi = entropy(x) + entropy(y) - joint_entropy(x, y);
    return mi < 0.0 ? 0.0 : mi;
}

inline double norm_mi(const LabelVector& x, const LabelVector& y) {
    const double hx = entropy(x);
    const double hy = entropy(y);
    if (hx == 0.0 || hy == 0.0) return 0.0;
    return mutual_information(x, y) / std::sqrt(hx * hy);
}

inline double norm_vi(const LabelVector& x, const LabelVector& y) {
    const double hxy = joint_entropy(x, y);
    if (hxy == 0.0) return 0.0;
    return 1.0 - mutual_information(x, y) / hxy;
}

inline double tdac(const std::vector<LabelVector>& rows, const LabelVector& labels, int i, int j,
                   double lambda) {
    if (i == j) return 0.0;
    return lambda * norm_vi(rows[i], rows[j]) +
           (1.0 - lambda) * 0.5 * (norm_mi(rows[i], labels) + norm_mi(rows[j], labels));
}

inline double tdas(const std::vector<LabelVector>& rows, const LabelVector& labels,
                   const std::vector<int>& subset, double lambda) {
    double sum = 0.0;
    for (int i : subset)
        for (int j : subset) sum += tdac(rows, labels, i, j, lambda);
    return 0.5 * sum;
}

// Recursive k-combination walk in lexicographic order.
inline void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> combo;
    std::function<void(int)> walk = [&](int start) {
        if (static_cast<int>(combo.size()) == k) {
            fn(combo);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(combo.size())); ++i) {
            combo.push_back(i);
            walk(i + 1);
            combo.pop_back();
        }
    };
    walk(0);
}

struct BestSubset {
    std::vector<int> indices;
    double tdas = -1.0;
};

inline BestSubset best_subset(const std::vector<LabelVector>& rows, const LabelVector& labels, int k,
                              double lambda) {
    BestSubset best;
    for_each_combination(static_cast<int>(rows.size()), k, [&](const std::vector<int>& combo) {
        const double value = tdas(rows, labels, combo, lambda);
        if (value > best.tdas) {
            best.tdas = value;
            best.indices = combo;
        }
    });
    return best;
}

// TDAC terms summed by the greedy argmax scans of the centralized pruner.
inline std::uint64_t greedy_eval_count(int n, int k) {
    std::uint64_t total = 0;
    for (int i = 2; i <= k; ++i)
        total += static_cast<std::uint64_t>(i - 1) * static_cast<std::uint64_t>(n - i + 1);
    return total;
}

struct GreedyTrace {
    std::vector<int> order;  // selection order, seed first
    double min_gap = 0.0;    // smallest winner margin across all decisions
};

// Independent replay of the greedy objective pruner: seed with the highest
// label MI, then repeatedly add the candidate with the largest tdac sum to
// the current selection, smallest index on ties. Also reports the smallest
// decision margin, so callers can filter out near-tied instances.
inline GreedyTrace greedy_trace(const std::vector<LabelVector>& rows, const LabelVector& labels,
                                int k, double lambda) {
    const int n = static_cast<int>(rows.size());
    k = std::min(k, n);
    GreedyTrace trace;
    trace.min_gap = std::numeric_limits<double>::infinity();

    std::vector<int> remaining;
    for (int i = 0; i < n; ++i) remaining.push_back(i);

    auto pick_max = [&](const std::vector<double>& scores) {
        int best = remaining[0];
        double best_score = scores[0];
        double runner_up = -std::numeric_limits<double>::infinity();
        for (std::size_t c = 1; c < remaining.size(); ++c) {
            if (scores[c] > best_score) {
                runner_up = best_score;
                best_score = scores[c];
                best = remaining[c];
            } else {
                runner_up = std::max(runner_up, scores[c]);
            }
        }
        if (remaining.size() > 1) trace.min_gap = std::min(trace.min_gap, best_score - runner_up);
        trace.order.push_back(best);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    };

    std::vector<double> scores(remaining.size());
    for (std::size_t c = 0; c < remaining.size(); ++c) scores[c] = norm_mi(rows[remaining[c]], labels);
    pick_max(scores);

    for (int step = 2; step <= k; ++step) {
        scores.resize(remaining.size());
        for (std::size_t c = 0; c < remaining.size(); ++c) {
            double gain = 0.0;
            for (int j : trace.order) gain += tdac(rows, labels, remaining[c], j, lambda);
            scores[c] = gain;
        }
        pick_max(scores);
    }
    return trace;
}

inline double kappa(const LabelVector& x, const LabelVector& y) {
    std::map<Label, double> px, py;
    double po = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        px[x[i]] += 1.0;
        py[y[i]] += 1.0;
        if (x[i] == y[i]) po += 1.0;
    }
    const double d = static_cast<double>(x.size());
    po /= d;
    double pe = 0.0;
    for (const auto& [c, cx] : px) {
        const auto it = py.find(c);
        if (it != py.end()) pe += (cx / d) * (it->second / d);
    }
    if (pe >= 1.0) return 1.0;
    return (po - pe) / (1.0 - pe);
}

// Independent replay of the kappa baseline: lowest-kappa pair first, then
// repeatedly the candidate with the smallest kappa sum, smallest index on
// ties.
inline std::vector<int> kappa_trace(const std::vector<LabelVector>& rows, int k) {
    const int n = static_cast<int>(rows.size());
    k = std::min(k, n);
    if (n == 1) return {0};

    int seed_a = 0, seed_b = 1;
    double best_pair = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (kappa(rows[i], rows[j]) < best_pair) {
                best_pair = kappa(rows[i], rows[j]);
                seed_a = i;
                seed_b = j;
            }

    std::vector<int> order{seed_a};
    if (k >= 2) order.push_back(seed_b);
    std::vector<int> remaining;
    for (int i = 0; i < n; ++i)
        if (i != seed_a && i != seed_b) remaining.push_back(i);

    while (static_cast<int>(order.size()) < k) {
        int best = -1;
        double best_sum = std::numeric_limits<double>::infinity();
        for (int cand : remaining) {
            double sum = 0.0;
            for (int j : order) sum += kappa(rows[cand], rows[j]);
            if (sum < best_sum) {
                best_sum = sum;
                best = cand;
            }
        }
        order.push_back(best);
        remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    }
    return order;
}

// Uniform random prediction rows and labels; a generic test instance.
inline entroprune::EnsemblePredictions random_ensemble(entroprune::Rng& rng, int n, int d, int n_c) {
    auto draw = [&] {
        LabelVector v(d);
        for (auto& x : v) x = static_cast<Label>(rng.bounded(n_c));
        return v;
    };
    std::vector<LabelVector> rows(n);
    for (auto& r : rows) r = draw();
    return entroprune::EnsemblePredictions(std::move(rows), draw(), n_c);
}

}  // namespace oracle
