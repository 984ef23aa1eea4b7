#include "gaq/representative.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gaq/error.hpp"
#include "gaq/linalg.hpp"

namespace gaq {

namespace {

struct Resolvents {
    Matrix upper;  // (uI - C)^{-1}
    Matrix lower;  // (C - lI)^{-1}
    double phi = 0.0;
};

Resolvents resolvents(const QueryState& state) {
    const auto eig = linalg::symmetric_eigen(state.c);
    const Index r = eig.values.size();
    Vector up(r), lo(r);
    for (Index j = 0; j < r; ++j) {
        const double mu = eig.values(j);
        if (!(mu < state.u) || !(mu > state.l)) {
            std::ostringstream msg;
            msg << "eigenvalue " << mu << " of C outside (" << state.l << ", " << state.u << ") at step " << state.t;
            throw Error(ErrorCode::BarrierViolated, msg.str());
        }
        up(j) = 1.0 / (state.u - mu);
        lo(j) = 1.0 / (mu - state.l);
    }
    Resolvents out;
    out.upper = eig.vectors * up.asDiagonal() * eig.vectors.transpose();
    out.lower = eig.vectors * lo.asDiagonal() * eig.vectors.transpose();
    out.phi = up.sum() + lo.sum();
    return out;
}

}  // namespace

QueryState init_state(Index r, double epsilon, int m, int budget, UpdateRule rule) {
    if (r < 1) throw Error(ErrorCode::InvalidDimension, "rank r must be >= 1");
    if (m < 1) throw Error(ErrorCode::InvalidConfig, "candidate count m must be >= 1");
    if (!(epsilon > 0.0) || !(epsilon * m < 1.0)) {
        throw Error(ErrorCode::EpsilonOutOfRange,
                    "need 0 < epsilon < 1/m, got epsilon=" + std::to_string(epsilon) + ", m=" + std::to_string(m));
    }
    if (budget < 1) throw Error(ErrorCode::InvalidBudget, "budget must be >= 1");

    QueryState s;
    const double rd = static_cast<double>(r);
    s.c = Matrix::Zero(r, r);
    s.u = 2.0 * rd / epsilon;
    s.l = -2.0 * rd / epsilon;
    s.kappa = 2.0 * rd * (1.0 - m * m * epsilon * epsilon) / (m * epsilon * epsilon);
    s.epsilon = epsilon;
    s.m = m;
    s.budget_left = budget;
    s.rule = rule;
    return s;
}

double potential(const QueryState& state) { return resolvents(state).phi; }

Vector sampling_probs(const QueryState& state, const Matrix& basis) {
    if (basis.cols() != state.rank()) throw Error(ErrorCode::DimensionMismatch, "basis rank does not match the state");
    const Resolvents res = resolvents(state);
    const Matrix sum = res.upper + res.lower;
    const Matrix projected = basis * sum;  // n x r
    Vector p = (projected.cwiseProduct(basis)).rowwise().sum() / res.phi;
    // Quadratic forms of a positive definite matrix; clip rounding below zero.
    return p.cwiseMax(0.0);
}

Vector sampling_probs(const QueryState& state, const SmoothedCovariates& sc) { return sampling_probs(state, sc.basis); }

bool barrier_bracket_holds(const QueryState& state) {
    if (state.c.rows() == 0) return state.l < 0.0 && 0.0 < state.u;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(state.c, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return state.l < ev(0) && ev(ev.size() - 1) < state.u;
}

CandidateDraw draw_candidates(const Vector& probs, int m, Rng& rng, double epsilon, double phi) {
    if (m < 1) throw Error(ErrorCode::InvalidConfig, "candidate count m must be >= 1");
    CandidateDraw draw;
    draw.probs = probs;
    const CategoricalSampler sampler(probs);
    draw.candidates.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const NodeId i = sampler(rng);
        draw.candidates.push_back(i);
        draw.per_node_weight.emplace(i, epsilon / (probs(i) * phi));
    }
    return draw;
}

QueryState apply_selection(QueryState state, NodeId i, double p_i, const RowVector& v_i) {
    if (state.budget_left <= 0) throw Error(ErrorCode::BudgetExhausted, "no query budget left");
    if (!(p_i > 0.0)) throw Error(ErrorCode::InvalidConfig, "selected node has zero sampling probability");
    if (v_i.size() != state.rank()) throw Error(ErrorCode::DimensionMismatch, "row length does not match rank");

    const double phi = potential(state);
    const double eps = state.epsilon;
    const double w = eps / (p_i * phi);
    const double increment = state.rule == UpdateRule::Algorithm ? w / state.kappa : w;
    if (!state.contains(i)) state.nodes.push_back(i);
    state.weights[i] += increment;

    state.c.noalias() += w * v_i.transpose() * v_i;
    state.c = 0.5 * (state.c + state.c.transpose());
    const double spread = state.rule == UpdateRule::Algorithm ? state.m * eps : eps;
    state.u += eps / (phi * (1.0 - spread));
    state.l += eps / (phi * (1.0 + spread));
    state.budget_left -= 1;
    state.t += 1;
    return state;
}

}  // namespace gaq
