#pragma once

#include <span>
#include <string>
#include <vector>

#include "gaq/covariates.hpp"
#include "gaq/graph.hpp"
#include "gaq/types.hpp"

namespace gaq {

enum class Task { Regression, Classification };

struct LabeledSample {
    NodeId node = 0;
    double response = 0.0;  // class index (0-based) for classification
    double weight = 1.0;
};

/// Column c of `coefficients` fits target c: one column for regression,
/// one per class for classification.
struct RecoveryModel {
    Matrix coefficients;  // r x K
    Index rank_used = 0;
    Task task = Task::Regression;
    Index num_classes = 0;
    /// All training samples carried one class; predictions are constant.
    bool single_class = false;
    Index constant_class = -1;

    Vector beta() const { return coefficients.col(0); }
};

/// Weighted least squares on the basis rows of the samples. Minimum-norm
/// solution via a complete orthogonal decomposition of sqrt(W) U_S with
/// relative rank threshold `tol`.
RecoveryModel fit_wls(const Matrix& basis, std::span<const LabeledSample> samples, double tol = 1e-10);
RecoveryModel fit_wls(const SmoothedCovariates& sc, std::span<const LabeledSample> samples, double tol = 1e-10);

/// Shared-design fit for several targets at once (rows of `targets` follow `samples`).
RecoveryModel fit_wls_multi(const Matrix& basis, std::span<const LabeledSample> samples, const Matrix& targets,
                            double tol = 1e-10);

/// n x K scores (K = 1 for regression).
Matrix predict_scores(const Matrix& basis, const RecoveryModel& model);
Vector predict(const SmoothedCovariates& sc, const RecoveryModel& model);

struct Classification {
    RecoveryModel model;
    Matrix scores;                  // n x K
    std::vector<Index> labels;      // hard labels, 0-based
};

/// One-vs-rest WLS on dummy targets; sample responses are class indices in [0, K).
Classification classify(const Matrix& basis, std::span<const LabeledSample> samples, Index num_classes,
                        double tol = 1e-10);
Classification classify(const SmoothedCovariates& sc, std::span<const LabeledSample> samples, Index num_classes,
                        double tol = 1e-10);

/// Row-wise argmax, ties to the smallest column.
std::vector<Index> argmax_rows(const Matrix& scores);
Matrix softmax_rows(const Matrix& scores);

double mse(const Vector& predicted, const Vector& truth, const std::vector<bool>& mask);

struct F1Scores {
    double micro = 0.0;
    double macro = 0.0;
};

/// micro-F1 is accuracy; macro-F1 averages per-class F1 over classes present
/// in either truth or prediction on the mask.
F1Scores f1_scores(const std::vector<Index>& predicted, const std::vector<Index>& truth,
                   const std::vector<bool>& mask);

/// Fraction of edges whose endpoints share a label.
double homophily_ratio(const Graph& g, const std::vector<Index>& labels);

}  // namespace gaq
