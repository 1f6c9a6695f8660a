#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "entroprune/objective.hpp"

namespace entroprune {

// Data plane: prediction-matrix CSV ingestion, a minimal bagging trainer
// over two dependency-free base learners, majority voting, accuracy
// scoring, and synthetic fixture generators.

struct Dataset {
    std::vector<std::vector<double>> features;  // d rows of f values
    LabelVector labels;                         // length d
};

struct SplitSpec {
    double train_fraction = 0.6;
    double validation_fraction = 0.2;
    double test_fraction = 0.2;
    std::uint64_t seed = 0;

    void validate() const;  // fractions positive and summing to 1
};

struct SplitIndices {
    std::vector<int> train;
    std::vector<int> validation;
    std::vector<int> test;
};

// Seeded shuffle, then a cut with each part within one instance of its
// requested fraction. The three parts partition {0..d-1} exactly.
SplitIndices split_dataset(std::size_t d, const SplitSpec& spec);

// Raised by the CSV readers; the message names file, line and column.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, int line, int column, const std::string& what_arg);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Predictions CSV: one row per classifier, d comma-separated class ids.
// Labels CSV: a single row of d class ids. '#' starts a comment line.
// n_c is inferred as 1 + the largest id seen in either file.
EnsemblePredictions load_predictions(const std::string& predictions_path,
                                     const std::string& labels_path);
void save_predictions(const EnsemblePredictions& ens, const std::string& predictions_path,
                      const std::string& labels_path);

// Dataset CSV: d rows of f real features followed by one integer label.
// An optional non-numeric first row is treated as a header.
Dataset load_dataset(const std::string& path);

enum class BaseLearner { stump, one_nn };

// Depth-1 threshold split chosen by misclassification count. Falls back to
// a constant majority-class predictor when the sample admits no split.
struct DecisionStump {
    bool constant = false;
    Label constant_label = 0;
    int feature = 0;
    double threshold = 0.0;
    Label left_label = 0;   // predicted when x[feature] <= threshold
    Label right_label = 0;

    static DecisionStump fit(const Dataset& data, std::span<const int> sample, int n_classes);
    Label predict(std::span<const double> features) const;
};

// Euclidean nearest neighbor over the stored sample; distance ties resolve
// to the earliest sample point.
struct OneNearestNeighbor {
    std::vector<std::vector<double>> points;
    LabelVector point_labels;

    static OneNearestNeighbor fit(const Dataset& data, std::span<const int> sample);
    Label predict(std::span<const double> features) const;
};

struct BaggingResult {
    EnsemblePredictions validation;  // per-estimator predictions on the validation split
    EnsemblePredictions test;        // per-estimator predictions on the test split
    int constant_fallbacks = 0;      // estimators that degenerated to a constant predictor
};

// Bootstrap `n_estimators` samples of the training split, fit the base
// learner on each, and emit every learner's predictions on the validation
// and test splits.
BaggingResult bagging_train(const Dataset& data, const SplitSpec& split, int n_estimators,
                            BaseLearner base, std::uint64_t seed);

// Per-instance plurality label over the subset's rows; vote ties resolve
// toward the smallest class id.
LabelVector majority_vote(const EnsemblePredictions& ens, std::span<const int> subset);

double accuracy(const LabelVector& predictions, const LabelVector& truth);

// Test-fixture generator: labels are uniform; each classifier copies the
// truth with probability `base_accuracy`, and errors are drawn from a
// shared stream with probability `correlation` (1 = identical rows).
EnsemblePredictions synthetic_ensemble(int n, int d, int n_c, double base_accuracy,
                                       double correlation, std::uint64_t seed);

// Isotropic Gaussian clusters around per-class centers drawn in [-5,5]^f.
Dataset gaussian_blobs(int d, int f, int n_c, double spread, std::uint64_t seed);

}  // namespace entroprune
