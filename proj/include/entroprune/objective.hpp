#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entroprune/entropy.hpp"

namespace entroprune {

// The pruning objective. A pair of classifiers scores
//
//   tdac(i,j) = lambda * VI(h_i, h_j) + (1-lambda) * (MI(h_i,c) + MI(h_j,c)) / 2
//
// with tdac(i,i) = 0, and a subset scores half the sum of all its pairwise
// tdac values. The subset-level score also has a decomposed form that
// separates the diversity and accuracy terms; both must agree.

struct ObjectiveParams {
    double lambda = 0.5;  // trade-off weight in [0,1]
    int k = 1;            // target sub-ensemble size, >= 1

    void validate() const;
};

// n classifier prediction vectors over d instances, plus the true labels.
// All rows and the labels share length d and the class universe {0..n_c-1}.
class EnsemblePredictions {
public:
    // Infers n_c = 1 + max class id over rows and labels.
    EnsemblePredictions(std::vector<LabelVector> rows, LabelVector labels);
    // Explicit class count; ids are validated against it.
    EnsemblePredictions(std::vector<LabelVector> rows, LabelVector labels, int n_classes);

    int n() const { return static_cast<int>(rows_.size()); }
    std::size_t d() const { return labels_.size(); }
    int n_classes() const { return n_classes_; }
    const LabelVector& row(int i) const;
    const std::vector<LabelVector>& rows() const { return rows_; }
    const LabelVector& labels() const { return labels_; }

    // Copy of the sub-ensemble given by `indices` (same labels, same n_c).
    EnsemblePredictions subset(std::span<const int> indices) const;

private:
    std::vector<LabelVector> rows_;
    LabelVector labels_;
    int n_classes_ = 0;
};

double tdac(const EnsemblePredictions& ens, int i, int j, double lambda);
double tdas_pairwise(const EnsemblePredictions& ens, std::span<const int> subset, double lambda);
double tdas_decomposed(const EnsemblePredictions& ens, std::span<const int> subset, double lambda);

// Memoized pairwise tdac values for one (ensemble, lambda). MI terms to the
// labels are computed up front; VI pairs are filled on first use. A cache
// instance is not thread-safe; build one per worker.
class TdacCache {
public:
    TdacCache(const EnsemblePredictions& ens, double lambda);

    double tdac(int i, int j);
    double tdas(std::span<const int> subset);
    double mi_to_labels(int i) const { return mi_[i]; }
    double lambda() const { return lambda_; }
    const EnsemblePredictions& ensemble() const { return *ens_; }

private:
    double vi(int i, int j);

    const EnsemblePredictions* ens_;
    double lambda_;
    std::vector<double> mi_;                      // MI(h_i, c), size n
    std::vector<std::optional<double>> vi_;       // upper-triangular pair cache
};

struct OptimumResult {
    std::vector<int> indices;  // ascending
    double tdas = 0.0;
    std::uint64_t subsets_evaluated = 0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Exhaustive maximizer over all k-subsets; ties break toward the
// lexicographically smallest index set. Refuses instances whose C(n,k)
// exceeds `cap`.
OptimumResult brute_force_optimum(const EnsemblePredictions& ens, const ObjectiveParams& params,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// C(n,k) saturating at 2^64-1; used for the enumeration cap check.
std::uint64_t binomial_or_max(int n, int k);

}  // namespace entroprune
