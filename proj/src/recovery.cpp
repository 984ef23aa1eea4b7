#include "gaq/recovery.hpp"

#include <cmath>
#include <set>
#include <string>

#include "gaq/error.hpp"

namespace gaq {

namespace {

void check_samples(const Matrix& basis, std::span<const LabeledSample> samples) {
    if (samples.empty()) throw Error(ErrorCode::EmptyLabelIntersection, "no labeled samples");
    for (const auto& s : samples) {
        if (s.node < 0 || s.node >= basis.rows()) {
            throw Error(ErrorCode::NodeIdOutOfRange, "sample node " + std::to_string(s.node) + " out of range");
        }
        if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
            throw Error(ErrorCode::InvalidConfig, "sample weights must be positive and finite");
        }
        if (!std::isfinite(s.response)) {
            throw Error(ErrorCode::NonFiniteResponse, "non-finite response at node " + std::to_string(s.node));
        }
    }
}

}  // namespace

RecoveryModel fit_wls_multi(const Matrix& basis, std::span<const LabeledSample> samples, const Matrix& targets,
                            double tol) {
    check_samples(basis, samples);
    const auto s = static_cast<Index>(samples.size());
    if (targets.rows() != s) throw Error(ErrorCode::DimensionMismatch, "targets do not match samples");
    if (!targets.allFinite()) throw Error(ErrorCode::NonFiniteResponse, "non-finite target");

    Matrix design(s, basis.cols());
    Matrix rhs(s, targets.cols());
    for (Index j = 0; j < s; ++j) {
        const double root = std::sqrt(samples[static_cast<std::size_t>(j)].weight);
        design.row(j) = root * basis.row(samples[static_cast<std::size_t>(j)].node);
        rhs.row(j) = root * targets.row(j);
    }
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
    cod.setThreshold(tol);
    cod.compute(design);

    RecoveryModel model;
    model.rank_used = cod.rank();
    model.coefficients = model.rank_used == 0 ? Matrix::Zero(basis.cols(), targets.cols()) : Matrix(cod.solve(rhs));
    return model;
}

RecoveryModel fit_wls(const Matrix& basis, std::span<const LabeledSample> samples, double tol) {
    Matrix y(static_cast<Index>(samples.size()), 1);
    for (std::size_t j = 0; j < samples.size(); ++j) y(static_cast<Index>(j), 0) = samples[j].response;
    RecoveryModel model = fit_wls_multi(basis, samples, y, tol);
    model.task = Task::Regression;
    model.num_classes = 0;
    return model;
}

RecoveryModel fit_wls(const SmoothedCovariates& sc, std::span<const LabeledSample> samples, double tol) {
    return fit_wls(sc.basis, samples, tol);
}

Matrix predict_scores(const Matrix& basis, const RecoveryModel& model) {
    if (model.coefficients.rows() != basis.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "model has " + std::to_string(model.coefficients.rows()) +
                                                      " coefficients per target, basis has " +
                                                      std::to_string(basis.cols()) + " columns");
    }
    return basis * model.coefficients;
}

Vector predict(const SmoothedCovariates& sc, const RecoveryModel& model) {
    return predict_scores(sc.basis, model).col(0);
}

std::vector<Index> argmax_rows(const Matrix& scores) {
    std::vector<Index> out(static_cast<std::size_t>(scores.rows()), 0);
    for (Index i = 0; i < scores.rows(); ++i) {
        Index best = 0;
        for (Index c = 1; c < scores.cols(); ++c) {
            if (scores(i, c) > scores(i, best)) best = c;
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

Matrix softmax_rows(const Matrix& scores) {
    Matrix out(scores.rows(), scores.cols());
    for (Index i = 0; i < scores.rows(); ++i) {
        const double top = scores.row(i).maxCoeff();
        const RowVector e = (scores.row(i).array() - top).exp().matrix();
        out.row(i) = e / e.sum();
    }
    return out;
}

Classification classify(const Matrix& basis, std::span<const LabeledSample> samples, Index num_classes,
                        double tol) {
    if (num_classes < 1) throw Error(ErrorCode::InvalidClassLabel, "need at least one class");
    std::set<Index> seen;
    Matrix dummy = Matrix::Zero(static_cast<Index>(samples.size()), num_classes);
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const double r = samples[j].response;
        const auto c = static_cast<Index>(r);
        if (!std::isfinite(r) || static_cast<double>(c) != r || c < 0 || c >= num_classes) {
            throw Error(ErrorCode::InvalidClassLabel, "class label " + std::to_string(r) + " outside [0, " +
                                                          std::to_string(num_classes) + ")");
        }
        dummy(static_cast<Index>(j), c) = 1.0;
        seen.insert(c);
    }

    Classification out;
    out.model = fit_wls_multi(basis, samples, dummy, tol);
    out.model.task = Task::Classification;
    out.model.num_classes = num_classes;
    out.scores = predict_scores(basis, out.model);
    if (seen.size() == 1) {
        out.model.single_class = true;
        out.model.constant_class = *seen.begin();
        out.labels.assign(static_cast<std::size_t>(basis.rows()), *seen.begin());
    } else {
        out.labels = argmax_rows(out.scores);
    }
    return out;
}

Classification classify(const SmoothedCovariates& sc, std::span<const LabeledSample> samples, Index num_classes,
                        double tol) {
    return classify(sc.basis, samples, num_classes, tol);
}

double mse(const Vector& predicted, const Vector& truth, const std::vector<bool>& mask) {
    if (predicted.size() != truth.size() || static_cast<Index>(mask.size()) != truth.size()) {
        throw Error(ErrorCode::DimensionMismatch, "mse inputs differ in length");
    }
    double acc = 0.0;
    Index count = 0;
    for (Index i = 0; i < truth.size(); ++i) {
        if (!mask[static_cast<std::size_t>(i)]) continue;
        const double e = predicted(i) - truth(i);
        acc += e * e;
        ++count;
    }
    if (count == 0) throw Error(ErrorCode::EmptyMask, "evaluation mask selects no nodes");
    return acc / static_cast<double>(count);
}

F1Scores f1_scores(const std::vector<Index>& predicted, const std::vector<Index>& truth,
                   const std::vector<bool>& mask) {
    if (predicted.size() != truth.size() || mask.size() != truth.size()) {
        throw Error(ErrorCode::DimensionMismatch, "f1 inputs differ in length");
    }
    std::set<Index> classes;
    Index total = 0;
    Index correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!mask[i]) continue;
        ++total;
        correct += predicted[i] == truth[i] ? 1 : 0;
        classes.insert(predicted[i]);
        classes.insert(truth[i]);
    }
    if (total == 0) throw Error(ErrorCode::EmptyMask, "evaluation mask selects no nodes");

    double macro = 0.0;
    for (Index c : classes) {
        Index tp = 0, fp = 0, fn = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (!mask[i]) continue;
            const bool p = predicted[i] == c;
            const bool t = truth[i] == c;
            tp += (p && t) ? 1 : 0;
            fp += (p && !t) ? 1 : 0;
            fn += (!p && t) ? 1 : 0;
        }
        macro += 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
    }
    return {static_cast<double>(correct) / static_cast<double>(total), macro / static_cast<double>(classes.size())};
}

double homophily_ratio(const Graph& g, const std::vector<Index>& labels) {
    if (static_cast<Index>(labels.size()) != g.num_nodes()) {
        throw Error(ErrorCode::DimensionMismatch, "label vector does not match the graph");
    }
    const auto& edges = g.edges();
    if (edges.empty()) return 0.0;
    std::size_t same = 0;
    for (const auto& e : edges) {
        same += labels[static_cast<std::size_t>(e.src)] == labels[static_cast<std::size_t>(e.dst)] ? 1 : 0;
    }
    return static_cast<double>(same) / static_cast<double>(edges.size());
}

}  // namespace gaq
