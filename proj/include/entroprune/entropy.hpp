#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace entroprune {

// Discrete entropy kernels over integer label vectors.
//
// A label vector holds one class id per instance, ids in {0..n_c-1}.
// Probabilities are empirical frequencies from counts; no smoothing.
// Entropies default to base 2 (bits). The normalized quantities norm_mi
// and norm_vi are ratios of entropies and therefore base-invariant.

using Label = std::int32_t;
using LabelVector = std::vector<Label>;

// Co-occurrence counts of two equal-length label vectors over a shared
// class universe {0..n_c-1}.
struct ContingencyTable {
    int n_c = 0;
    std::vector<std::int64_t> joint_counts;  // n_c * n_c, row-major [x][y]
    std::vector<std::int64_t> marginals_x;
    std::vector<std::int64_t> marginals_y;
    std::int64_t total = 0;

    std::int64_t joint(int a, int b) const { return joint_counts[static_cast<std::size_t>(a) * n_c + b]; }

    static ContingencyTable from(std::span<const Label> x, std::span<const Label> y);
};

// Shannon entropy H(x) of the empirical label distribution, in units of
// log `log_base`. Throws std::invalid_argument on an empty vector.
double entropy(std::span<const Label> x, double log_base = 2.0);

// Joint entropy H(x,y). Throws on length mismatch or empty input.
double joint_entropy(std::span<const Label> x, std::span<const Label> y, double log_base = 2.0);

// I(x;y) = H(x) + H(y) - H(x,y), clamped to be nonnegative.
double mutual_information(std::span<const Label> x, std::span<const Label> y, double log_base = 2.0);

// I(x;y) / sqrt(H(x) H(y)), in [0,1]. Returns 0 when either marginal
// entropy is 0 (a constant vector carries no information).
double norm_mi(std::span<const Label> x, std::span<const Label> y, double log_base = 2.0);

// 1 - I(x;y) / H(x,y), in [0,1]. Returns 0 when the joint entropy is 0
// (two constant vectors). This is a metric on label vectors.
double norm_vi(std::span<const Label> x, std::span<const Label> y, double log_base = 2.0);

}  // namespace entroprune
