#include "entroprune/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace entroprune {

namespace {

int infer_n_classes(const std::vector<LabelVector>& rows, const LabelVector& labels) {
    Label max_id = 0;
    for (const auto& r : rows)
        for (Label v : r) max_id = std::max(max_id, v);
    for (Label v : labels) max_id = std::max(max_id, v);
    return static_cast<int>(max_id) + 1;
}

void check_index(const EnsemblePredictions& ens, int i) {
    if (i < 0 || i >= ens.n()) throw std::invalid_argument("classifier index out of range");
}

void check_subset(const EnsemblePredictions& ens, std::span<const int> subset) {
    for (int i : subset) check_index(ens, i);
}

}  // namespace

void ObjectiveParams::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0,1]");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
}

EnsemblePredictions::EnsemblePredictions(std::vector<LabelVector> rows, LabelVector labels)
    : EnsemblePredictions(std::move(rows), std::move(labels), 0) {}

EnsemblePredictions::EnsemblePredictions(std::vector<LabelVector> rows, LabelVector labels, int n_classes)
    : rows_(std::move(rows)), labels_(std::move(labels)), n_classes_(n_classes) {
    if (rows_.empty()) throw std::invalid_argument("ensemble must contain at least one classifier");
    if (labels_.empty()) throw std::invalid_argument("label vector must be nonempty");
    for (const auto& r : rows_)
        if (r.size() != labels_.size())
            throw std::invalid_argument("all prediction rows must match the label vector length");
    if (n_classes_ == 0) {
        n_classes_ = infer_n_classes(rows_, labels_);
    }
    auto check_ids = [&](const LabelVector& v) {
        for (Label id : v)
            if (id < 0 || id >= n_classes_)
                throw std::invalid_argument("class id outside {0..n_c-1}");
    };
    for (const auto& r : rows_) check_ids(r);
    check_ids(labels_);
}

const LabelVector& EnsemblePredictions::row(int i) const {
    check_index(*this, i);
    return rows_[i];
}

EnsemblePredictions EnsemblePredictions::subset(std::span<const int> indices) const {
    check_subset(*this, indices);
    std::vector<LabelVector> rows;
    rows.reserve(indices.size());
    for (int i : indices) rows.push_back(rows_[i]);
    return EnsemblePredictions(std::move(rows), labels_, n_classes_);
}

double tdac(const EnsemblePredictions& ens, int i, int j, double lambda) {
    check_index(ens, i);
    check_index(ens, j);
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0,1]");
    if (i == j) return 0.0;
    const double vi = norm_vi(ens.row(i), ens.row(j));
    const double mi_i = norm_mi(ens.row(i), ens.labels());
    const double mi_j = norm_mi(ens.row(j), ens.labels());
    return lambda * vi + (1.0 - lambda) * 0.5 * (mi_i + mi_j);
}

double tdas_pairwise(const EnsemblePredictions& ens, std::span<const int> subset, double lambda) {
    check_subset(ens, subset);
    double sum = 0.0;
    for (int i : subset)
        for (int j : subset) sum += tdac(ens, i, j, lambda);
    return 0.5 * sum;
}

double tdas_decomposed(const EnsemblePredictions& ens, std::span<const int> subset, double lambda) {
    check_subset(ens, subset);
    const double s = static_cast<double>(subset.size());
    double vi_sum = 0.0;
    for (int i : subset)
        for (int j : subset)
            if (i != j) vi_sum += norm_vi(ens.row(i), ens.row(j));
    double mi_sum = 0.0;
    for (int i : subset) mi_sum += norm_mi(ens.row(i), ens.labels());
    return 0.5 * lambda * vi_sum + 0.5 * (s - 1.0) * (1.0 - lambda) * mi_sum;
}

TdacCache::TdacCache(const EnsemblePredictions& ens, double lambda) : ens_(&ens), lambda_(lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must be in [0,1]");
    const int n = ens.n();
    mi_.resize(n);
    for (int i = 0; i < n; ++i) mi_[i] = norm_mi(ens.row(i), ens.labels());
    vi_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, std::nullopt);
}

double TdacCache::vi(int i, int j) {
    if (i > j) std::swap(i, j);
    // offset of pair (i,j), i < j, in the flattened upper triangle
    const std::size_t idx =
        static_cast<std::size_t>(i) * ens_->n() - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
    if (!vi_[idx]) vi_[idx] = norm_vi(ens_->row(i), ens_->row(j));
    return *vi_[idx];
}

double TdacCache::tdac(int i, int j) {
    check_index(*ens_, i);
    check_index(*ens_, j);
    if (i == j) return 0.0;
    return lambda_ * vi(i, j) + (1.0 - lambda_) * 0.5 * (mi_[i] + mi_[j]);
}

double TdacCache::tdas(std::span<const int> subset) {
    check_subset(*ens_, subset);
    double sum = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) sum += tdac(subset[a], subset[b]);
    return sum;
}

std::uint64_t binomial_or_max(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        if (c > kMax / num) return kMax;
        c = c * num / static_cast<std::uint64_t>(i);
    }
    return c;
}

OptimumResult brute_force_optimum(const EnsemblePredictions& ens, const ObjectiveParams& params,
                                  std::uint64_t cap) {
    params.validate();
    const int n = ens.n();
    const int k = params.k;
    if (k > n) throw std::invalid_argument("k must not exceed the ensemble size for the oracle");
    if (binomial_or_max(n, k) > cap) throw std::invalid_argument("instance too large for oracle");

    TdacCache cache(ens, params.lambda);

    OptimumResult best;
    best.tdas = -1.0;

    // Lexicographic enumeration of k-subsets; first maximum wins, which
    // makes ties break toward the lexicographically smallest index set.
    std::vector<int> combo(k);
    for (int i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
        ++best.subsets_evaluated;
        const double value = cache.tdas(combo);
        if (value > best.tdas) {
            best.tdas = value;
            best.indices = combo;
        }
        int pos = k - 1;
        while (pos >= 0 && combo[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++combo[pos];
        for (int i = pos + 1; i < k; ++i) combo[i] = combo[i - 1] + 1;
    }
    return best;
}

}  // namespace entroprune
