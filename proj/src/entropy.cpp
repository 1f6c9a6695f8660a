#include "entroprune/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroprune {

namespace {

void check_nonempty(std::span<const Label> x) {
    if (x.empty()) throw std::invalid_argument("label vector must be nonempty");
}

void check_same_length(std::span<const Label> x, std::span<const Label> y) {
    if (x.size() != y.size()) throw std::invalid_argument("label vectors must have equal length");
}

int class_count(std::span<const Label> x) {
    Label max_id = 0;
    for (Label v : x) {
        if (v < 0) throw std::invalid_argument("class ids must be nonnegative");
        max_id = std::max(max_id, v);
    }
    return static_cast<int>(max_id) + 1;
}

double entropy_of_counts(const std::vector<std::int64_t>& counts, std::int64_t total, double log_base) {
    const double log_b = std::log(log_base);
    double h = 0.0;
    for (std::int64_t c : counts) {
        if (c == 0) continue;  // empty bins contribute 0
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * (std::log(p) / log_b);
    }
    return h < 0.0 ? 0.0 : h;
}

// Joint entropy summed in a transpose-invariant order so that swapping the
// two arguments gives a bitwise-identical result.
double joint_entropy_of_table(const ContingencyTable& t, double log_base) {
    const double log_b = std::log(log_base);
    const double total = static_cast<double>(t.total);
    auto term = [&](std::int64_t c) {
        if (c == 0) return 0.0;
        const double p = static_cast<double>(c) / total;
        return -p * (std::log(p) / log_b);
    };
    double h = 0.0;
    for (int a = 0; a < t.n_c; ++a) h += term(t.joint(a, a));
    for (int a = 0; a < t.n_c; ++a)
        for (int b = a + 1; b < t.n_c; ++b) h += term(t.joint(a, b)) + term(t.joint(b, a));
    return h < 0.0 ? 0.0 : h;
}

}  // namespace

ContingencyTable ContingencyTable::from(std::span<const Label> x, std::span<const Label> y) {
    check_nonempty(x);
    check_same_length(x, y);
    ContingencyTable t;
    t.n_c = std::max(class_count(x), class_count(y));
    t.joint_counts.assign(static_cast<std::size_t>(t.n_c) * t.n_c, 0);
    t.marginals_x.assign(t.n_c, 0);
    t.marginals_y.assign(t.n_c, 0);
    t.total = static_cast<std::int64_t>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        ++t.joint_counts[static_cast<std::size_t>(x[i]) * t.n_c + y[i]];
        ++t.marginals_x[x[i]];
        ++t.marginals_y[y[i]];
    }
    return t;
}

double entropy(std::span<const Label> x, double log_base) {
    check_nonempty(x);
    std::vector<std::int64_t> counts(class_count(x), 0);
    for (Label v : x) ++counts[v];
    return entropy_of_counts(counts, static_cast<std::int64_t>(x.size()), log_base);
}

double joint_entropy(std::span<const Label> x, std::span<const Label> y, double log_base) {
    const ContingencyTable t = ContingencyTable::from(x, y);
    return joint_entropy_of_table(t, log_base);
}

double mutual_information(std::span<const Label> x, std::span<const Label> y, double log_base) {
    const ContingencyTable t = ContingencyTable::from(x, y);
    const double hx = entropy_of_counts(t.marginals_x, t.total, log_base);
    const double hy = entropy_of_counts(t.marginals_y, t.total, log_base);
    const double hxy = joint_entropy_of_table(t, log_base);
    const double mi = hx + hy - hxy;
    return mi < 0.0 ? 0.0 : mi;  // clamp floating-point cancellation
}

double norm_mi(std::span<const Label> x, std::span<const Label> y, double log_base) {
    const ContingencyTable t = ContingencyTable::from(x, y);
    const double hx = entropy_of_counts(t.marginals_x, t.total, log_base);
    const double hy = entropy_of_counts(t.marginals_y, t.total, log_base);
    if (hx == 0.0 || hy == 0.0) return 0.0;
    const double hxy = joint_entropy_of_table(t, log_base);
    double mi = hx + hy - hxy;
    if (mi < 0.0) mi = 0.0;
    const double r = mi / std::sqrt(hx * hy);
    return std::clamp(r, 0.0, 1.0);
}

double norm_vi(std::span<const Label> x, std::span<const Label> y, double log_base) {
    const ContingencyTable t = ContingencyTable::from(x, y);
    const double hxy = joint_entropy_of_table(t, log_base);
    if (hxy == 0.0) return 0.0;
    const double hx = entropy_of_counts(t.marginals_x, t.total, log_base);
    const double hy = entropy_of_counts(t.marginals_y, t.total, log_base);
    double mi = hx + hy - hxy;
    if (mi < 0.0) mi = 0.0;
    const double r = 1.0 - mi / hxy;
    return std::clamp(r, 0.0, 1.0);
}

}  // namespace entroprune
