#pragma once

#include <map>
#include <vector>

#include "gaq/covariates.hpp"
#include "gaq/rng.hpp"
#include "gaq/types.hpp"

namespace gaq {

/// Which set of update constants drives the barriers and weights.
///  - Algorithm: u += eps/(Phi(1 - m eps)), l += eps/(Phi(1 + m eps)), s_i = w_i / kappa
///  - Prose:     u += eps/(Phi(1 - eps)),   l += eps/(Phi(1 + eps)),   s_i = w_i
enum class UpdateRule { Algorithm, Prose };

/**
 * Barrier-potential sampler state.
 *
 * Invariants: l < lambda_min(c) <= lambda_max(c) < u; weights are positive and
 * keyed exactly by `nodes`; budget_left >= 0.
 */
struct QueryState {
    int t = 0;
    Matrix c;  // r x r accumulated covariance
    double u = 0.0;
    double l = 0.0;
    std::vector<NodeId> nodes;        // distinct, in order of first selection
    std::map<NodeId, double> weights; // s_i
    double kappa = 0.0;
    double epsilon = 0.0;
    int m = 1;
    int budget_left = 0;
    UpdateRule rule = UpdateRule::Algorithm;

    Index rank() const { return c.rows(); }
    bool contains(NodeId i) const { return weights.count(i) != 0; }
};

QueryState init_state(Index r, double epsilon, int m, int budget, UpdateRule rule = UpdateRule::Algorithm);

/// Resolvent traces Tr[(uI - C)^{-1}] + Tr[(C - lI)^{-1}]; throws BarrierViolated
/// when an eigenvalue of C leaves (l, u).
double potential(const QueryState& state);

/// p_i = [v_i (uI - C)^{-1} v_i^T + v_i (C - lI)^{-1} v_i^T] / Phi over the
/// rows v_i of the basis. Not renormalised: the sum is 1 analytically.
Vector sampling_probs(const QueryState& state, const Matrix& basis);
Vector sampling_probs(const QueryState& state, const SmoothedCovariates& sc);

/// l < lambda_min(C) <= lambda_max(C) < u.
bool barrier_bracket_holds(const QueryState& state);

struct CandidateDraw {
    Vector probs;
    std::vector<NodeId> candidates;           // with replacement, draw order
    std::map<NodeId, double> per_node_weight; // w_i = eps / (p_i Phi)
};

CandidateDraw draw_candidates(const Vector& probs, int m, Rng& rng, double epsilon, double phi);

/// Steps 3-4: weight the chosen node, grow C and the barriers, spend one unit
/// of budget (re-selections included).
QueryState apply_selection(QueryState state, NodeId i, double p_i, const RowVector& v_i);

}  // namespace gaq
