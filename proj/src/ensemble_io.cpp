#include "entroprune/ensemble_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "entroprune/rng.hpp"

namespace entroprune {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool is_comment_or_blank(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

Label parse_class_id(const std::string& field, const std::string& path, int line, int column) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(path, line, column, "expected an integer class id, got '" + field + "'");
    if (value < 0) throw ParseError(path, line, column, "class ids must be nonnegative");
    return static_cast<Label>(value);
}

double parse_real(const std::string& field, const std::string& path, int line, int column) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw ParseError(path, line, column, "expected a number, got '" + field + "'");
    return value;
}

// Rows of integer fields; returns (row, 1-based source line) pairs.
std::vector<std::pair<LabelVector, int>> read_label_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::pair<LabelVector, int>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        LabelVector row;
        row.reserve(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            row.push_back(parse_class_id(fields[c], path, line_no, static_cast<int>(c) + 1));
        rows.emplace_back(std::move(row), line_no);
    }
    return rows;
}

Label plurality(std::span<const int> votes) {
    Label best = 0;
    int best_votes = -1;
    for (int c = 0; c < static_cast<int>(votes.size()); ++c) {
        if (votes[c] > best_votes) {
            best_votes = votes[c];
            best = c;
        }
    }
    return best;
}

double gauss(Rng& rng) {
    // Box-Muller; one value per call keeps the draw order obvious.
    double u1 = rng.uniform();
    while (u1 == 0.0) u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

void validate_dataset(const Dataset& data) {
    if (data.features.size() != data.labels.size())
        throw std::invalid_argument("feature rows and labels must have the same count");
    if (data.features.empty()) throw std::invalid_argument("dataset is empty");
    const std::size_t f = data.features.front().size();
    for (const auto& row : data.features)
        if (row.size() != f) throw std::invalid_argument("feature rows have inconsistent width");
    for (Label v : data.labels)
        if (v < 0) throw std::invalid_argument("labels must be nonnegative class ids");
}

}  // namespace

void SplitSpec::validate() const {
    if (train_fraction <= 0.0 || validation_fraction <= 0.0 || test_fraction <= 0.0)
        throw std::invalid_argument("split fractions must be positive");
    if (std::abs(train_fraction + validation_fraction + test_fraction - 1.0) > 1e-9)
        throw std::invalid_argument("split fractions must sum to 1");
}

SplitIndices split_dataset(std::size_t d, const SplitSpec& spec) {
    spec.validate();
    std::vector<int> order(d);
    for (std::size_t i = 0; i < d; ++i) order[i] = static_cast<int>(i);
    Rng rng(spec.seed);
    rng.shuffle(order);

    const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(d)));
    const auto n_val = static_cast<std::size_t>(std::llround(spec.validation_fraction * static_cast<double>(d)));
    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + n_train);
    out.validation.assign(order.begin() + n_train, order.begin() + n_train + n_val);
    out.test.assign(order.begin() + n_train + n_val, order.end());
    return out;
}

ParseError::ParseError(const std::string& path, int line, int column, const std::string& what_arg)
    : std::runtime_error(path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what_arg),
      line_(line),
      column_(column) {}

EnsemblePredictions load_predictions(const std::string& predictions_path,
                                     const std::string& labels_path) {
    const auto pred_rows = read_label_rows(predictions_path);
    if (pred_rows.empty()) throw ParseError(predictions_path, 1, 1, "no prediction rows found");
    const std::size_t d = pred_rows.front().first.size();
    for (const auto& [row, line_no] : pred_rows)
        if (row.size() != d)
            throw ParseError(predictions_path, line_no, static_cast<int>(row.size()),
                             "ragged row: expected " + std::to_string(d) + " fields, got " +
                                 std::to_string(row.size()));

    const auto label_rows = read_label_rows(labels_path);
    if (label_rows.size() != 1)
        throw ParseError(labels_path, label_rows.empty() ? 1 : label_rows[1].second, 1,
                         "labels file must contain exactly one row");
    const LabelVector& labels = label_rows.front().first;
    if (labels.size() != d)
        throw ParseError(labels_path, label_rows.front().second, 1,
                         "labels length " + std::to_string(labels.size()) +
                             " does not match prediction row length " + std::to_string(d));

    std::vector<LabelVector> rows;
    rows.reserve(pred_rows.size());
    for (const auto& [row, _] : pred_rows) rows.push_back(row);
    return EnsemblePredictions(std::move(rows), labels);
}

void save_predictions(const EnsemblePredictions& ens, const std::string& predictions_path,
                      const std::string& labels_path) {
    auto write_row = [](std::ofstream& out, const LabelVector& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << ',';
            out << row[i];
        }
        out << '\n';
    };
    std::ofstream pred_out(predictions_path);
    if (!pred_out) throw std::runtime_error("cannot write file: " + predictions_path);
    for (int i = 0; i < ens.n(); ++i) write_row(pred_out, ens.row(i));
    std::ofstream label_out(labels_path);
    if (!label_out) throw std::runtime_error("cannot write file: " + labels_path);
    write_row(label_out, ens.labels());
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    Dataset data;
    std::string line;
    int line_no = 0;
    bool first_data_row = true;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        if (first_data_row) {
            // A non-numeric first row is an optional header.
            double probe = 0.0;
            const auto [ptr, ec] =
                std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), probe);
            if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
                first_data_row = false;
                continue;
            }
        }
        first_data_row = false;
        if (fields.size() < 2)
            throw ParseError(path, line_no, 1, "expected at least one feature and a label");
        if (width == 0) width = fields.size();
        if (fields.size() != width)
            throw ParseError(path, line_no, static_cast<int>(fields.size()),
                             "ragged row: expected " + std::to_string(width) + " fields");
        std::vector<double> row;
        row.reserve(width - 1);
        for (std::size_t c = 0; c + 1 < fields.size(); ++c)
            row.push_back(parse_real(fields[c], path, line_no, static_cast<int>(c) + 1));
        data.features.push_back(std::move(row));
        data.labels.push_back(
            parse_class_id(fields.back(), path, line_no, static_cast<int>(fields.size())));
    }
    validate_dataset(data);
    return data;
}

DecisionStump DecisionStump::fit(const Dataset& data, std::span<const int> sample, int n_classes) {
    DecisionStump stump;
    std::vector<int> class_counts(n_classes, 0);
    for (int idx : sample) ++class_counts[data.labels[idx]];
    const Label majority = plurality(class_counts);

    int distinct_classes = 0;
    for (int c : class_counts)
        if (c > 0) ++distinct_classes;
    if (distinct_classes <= 1) {
        stump.constant = true;
        stump.constant_label = majority;
        return stump;
    }

    const std::size_t n_features = data.features.front().size();
    long best_errors = std::numeric_limits<long>::max();
    bool found = false;

    std::vector<std::pair<double, Label>> column(sample.size());
    for (std::size_t f = 0; f < n_features; ++f) {
        for (std::size_t i = 0; i < sample.size(); ++i)
            column[i] = {data.features[sample[i]][f], data.labels[sample[i]]};
        std::sort(column.begin(), column.end());

        std::vector<int> left_counts(n_classes, 0);
        std::vector<int> right_counts = class_counts;
        for (std::size_t i = 0; i + 1 < column.size(); ++i) {
            ++left_counts[column[i].second];
            --right_counts[column[i].second];
            if (column[i].first == column[i + 1].first) continue;  // not a cut point
            const Label left = plurality(left_counts);
            const Label right = plurality(right_counts);
            const long errors = static_cast<long>(i + 1 - left_counts[left]) +
                                static_cast<long>(column.size() - i - 1 - right_counts[right]);
            if (errors < best_errors) {
                best_errors = errors;
                stump.feature = static_cast<int>(f);
                stump.threshold = 0.5 * (column[i].first + column[i + 1].first);
                stump.left_label = left;
                stump.right_label = right;
                found = true;
            }
        }
    }

    if (!found) {  // every feature is constant on the sample
        stump.constant = true;
        stump.constant_label = majority;
    }
    return stump;
}

Label DecisionStump::predict(std::span<const double> features) const {
    if (constant) return constant_label;
    return features[feature] <= threshold ? left_label : right_label;
}

OneNearestNeighbor OneNearestNeighbor::fit(const Dataset& data, std::span<const int> sample) {
    OneNearestNeighbor nn;
    nn.points.reserve(sample.size());
    nn.point_labels.reserve(sample.size());
    for (int idx : sample) {
        nn.points.push_back(data.features[idx]);
        nn.point_labels.push_back(data.labels[idx]);
    }
    return nn;
}

Label OneNearestNeighbor::predict(std::span<const double> features) const {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double dist = 0.0;
        for (std::size_t j = 0; j < features.size(); ++j) {
            const double delta = points[i][j] - features[j];
            dist += delta * delta;
        }
        if (dist < best) {
            best = dist;
            best_idx = i;
        }
    }
    return point_labels[best_idx];
}

BaggingResult bagging_train(const Dataset& data, const SplitSpec& split, int n_estimators,
                            BaseLearner base, std::uint64_t seed) {
    validate_dataset(data);
    if (n_estimators < 1) throw std::invalid_argument("n_estimators must be >= 1");
    const SplitIndices idx = split_dataset(data.labels.size(), split);
    if (idx.train.empty() || idx.validation.empty() || idx.test.empty())
        throw std::invalid_argument("dataset too small: a split is empty");

    int n_classes = 0;
    for (Label v : data.labels) n_classes = std::max(n_classes, static_cast<int>(v) + 1);

    std::vector<LabelVector> val_rows(n_estimators), test_rows(n_estimators);
    int fallbacks = 0;
    std::vector<int> sample(idx.train.size());
    for (int e = 0; e < n_estimators; ++e) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(e)));
        for (auto& s : sample)
            s = idx.train[static_cast<std::size_t>(rng.bounded(idx.train.size()))];

        auto predict_all = [&](auto& model, const std::vector<int>& instances) {
            LabelVector out;
            out.reserve(instances.size());
            for (int i : instances) out.push_back(model.predict(data.features[i]));
            return out;
        };
        if (base == BaseLearner::stump) {
            const DecisionStump model = DecisionStump::fit(data, sample, n_classes);
            if (model.constant) ++fallbacks;
            val_rows[e] = predict_all(model, idx.validation);
            test_rows[e] = predict_all(model, idx.test);
        } else {
            const OneNearestNeighbor model = OneNearestNeighbor::fit(data, sample);
            val_rows[e] = predict_all(model, idx.validation);
            test_rows[e] = predict_all(model, idx.test);
        }
    }

    auto labels_at = [&](const std::vector<int>& instances) {
        LabelVector out;
        out.reserve(instances.size());
        for (int i : instances) out.push_back(data.labels[i]);
        return out;
    };
    BaggingResult result{
        EnsemblePredictions(std::move(val_rows), labels_at(idx.validation), n_classes),
        EnsemblePredictions(std::move(test_rows), labels_at(idx.test), n_classes), fallbacks};
    return result;
}

LabelVector majority_vote(const EnsemblePredictions& ens, std::span<const int> subset) {
    if (subset.empty()) throw std::invalid_argument("majority vote needs a nonempty subset");
    for (int i : subset)
        if (i < 0 || i >= ens.n()) throw std::invalid_argument("classifier index out of range");

    LabelVector out(ens.d());
    std::vector<int> votes(ens.n_classes());
    for (std::size_t t = 0; t < ens.d(); ++t) {
        std::fill(votes.begin(), votes.end(), 0);
        for (int i : subset) ++votes[ens.row(i)[t]];
        out[t] = plurality(votes);
    }
    return out;
}

double accuracy(const LabelVector& predictions, const LabelVector& truth) {
    if (predictions.size() != truth.size())
        throw std::invalid_argument("prediction and truth vectors must have equal length");
    if (truth.empty()) throw std::invalid_argument("accuracy of empty vectors is undefined");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i)
        if (predictions[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

EnsemblePredictions synthetic_ensemble(int n, int d, int n_c, double base_accuracy,
                                       double correlation, std::uint64_t seed) {
    if (n < 1 || d < 1 || n_c < 2) throw std::invalid_argument("need n >= 1, d >= 1, n_c >= 2");
    if (!(base_accuracy >= 0.0 && base_accuracy <= 1.0))
        throw std::invalid_argument("base_accuracy must be in [0,1]");
    if (!(correlation >= 0.0 && correlation <= 1.0))
        throw std::invalid_argument("correlation must be in [0,1]");

    Rng label_rng(derive_seed(seed, 0));
    LabelVector labels(d);
    for (auto& v : labels) v = static_cast<Label>(label_rng.bounded(n_c));

    // Shared error stream: classifiers that follow it at instance t all
    // produce the same draw, which controls diversity.
    Rng shared_rng(derive_seed(seed, 1));
    LabelVector shared_draw(d);
    for (int t = 0; t < d; ++t) {
        if (shared_rng.uniform() < base_accuracy) {
            shared_draw[t] = labels[t];
        } else {
            shared_draw[t] =
                static_cast<Label>((labels[t] + 1 + shared_rng.bounded(n_c - 1)) % n_c);
        }
    }

    std::vector<LabelVector> rows(n);
    for (int i = 0; i < n; ++i) {
        Rng rng(derive_seed(seed, 2 + static_cast<std::uint64_t>(i)));
        LabelVector row(d);
        for (int t = 0; t < d; ++t) {
            if (rng.uniform() < correlation) {
                row[t] = shared_draw[t];
            } else if (rng.uniform() < base_accuracy) {
                row[t] = labels[t];
            } else {
                row[t] = static_cast<Label>((labels[t] + 1 + rng.bounded(n_c - 1)) % n_c);
            }
        }
        rows[i] = std::move(row);
    }
    return EnsemblePredictions(std::move(rows), std::move(labels), n_c);
}

Dataset gaussian_blobs(int d, int f, int n_c, double spread, std::uint64_t seed) {
    if (d < 1 || f < 1 || n_c < 2) throw std::invalid_argument("need d >= 1, f >= 1, n_c >= 2");
    Rng center_rng(derive_seed(seed, 0));
    std::vector<std::vector<double>> centers(n_c, std::vector<double>(f));
    for (auto& center : centers)
        for (auto& coord : center) coord = center_rng.uniform() * 10.0 - 5.0;

    Rng rng(derive_seed(seed, 1));
    Dataset data;
    data.features.resize(d, std::vector<double>(f));
    data.labels.resize(d);
    for (int t = 0; t < d; ++t) {
        const int c = static_cast<int>(rng.bounded(n_c));
        data.labels[t] = c;
        for (int j = 0; j < f; ++j) data.features[t][j] = centers[c][j] + spread * gauss(rng);
    }
    return data;
}

}  // namespace entroprune
