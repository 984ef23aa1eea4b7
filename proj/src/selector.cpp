#include "gaq/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gaq/error.hpp"
#include "gaq/linalg.hpp"
#include "gaq/rng.hpp"

namespace gaq {

namespace {

constexpr std::uint64_t kSelectorStream = 1;
constexpr std::uint64_t kTuneStream = 2;
constexpr std::uint64_t kRandomStream = 3;

}  // namespace

void SelectorConfig::validate() const {
    if (budget < 1) throw Error(ErrorCode::InvalidBudget, "budget must be >= 1");
    if (spectral_dim && *spectral_dim < 1) throw Error(ErrorCode::InvalidDimension, "spectral_dim must be >= 1");
    if (k < 1) throw Error(ErrorCode::InvalidConfig, "k must be >= 1");
    if (!(epsilon > 0.0)) throw Error(ErrorCode::EpsilonOutOfRange, "epsilon must be positive");
    if (m) {
        if (*m < 1) throw Error(ErrorCode::InvalidConfig, "m must be >= 1");
        if (!(epsilon * *m < 1.0)) {
            throw Error(ErrorCode::EpsilonOutOfRange,
                        "need epsilon < 1/m, got epsilon=" + std::to_string(epsilon) + ", m=" + std::to_string(*m));
        }
    } else if (m_grid.empty()) {
        throw Error(ErrorCode::InvalidConfig, "m is Auto but m_grid is empty");
    }
    if (!(rank_tol > 0.0)) throw Error(ErrorCode::InvalidConfig, "rank_tol must be positive");
}

Index resolve_spectral_dim(const SelectorConfig& cfg, Index p, Index n) {
    const Index d = cfg.spectral_dim ? *cfg.spectral_dim : std::min<Index>(p, cfg.budget);
    return std::min(d, n);
}

PreparedProblem prepare_problem(LaplacianSpectrum spectrum, const CovariateMatrix& x, const SelectorConfig& cfg) {
    if (x.rows() != spectrum.size()) throw Error(ErrorCode::DimensionMismatch, "covariate rows do not match the graph");
    PreparedProblem prob;
    prob.spectrum = std::move(spectrum);
    const Index d = resolve_spectral_dim(cfg, x.cols(), prob.spectrum.size());
    if (cfg.mode == SpectralMode::LowPass) {
        prob.basis = spectral_basis(prob.spectrum, d, SpectralMode::LowPass);
    } else {
        prob.basis = spectral_basis_split(prob.spectrum, (d + 1) / 2, d / 2);
    }
    prob.smoothed = smoothed_basis(prob.basis, x, cfg.rank_tol);
    return prob;
}

PreparedProblem prepare_problem(const Graph& g, const CovariateMatrix& x, const SelectorConfig& cfg) {
    return prepare_problem(laplacian_spectrum(g), x, cfg);
}

double weighted_condition_number(const Matrix& basis, const std::vector<NodeId>& nodes,
                                 const std::vector<double>& weights) {
    Matrix cov = Matrix::Zero(basis.cols(), basis.cols());
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const RowVector v = basis.row(nodes[j]);
        cov.noalias() += weights[j] * v.transpose() * v;
    }
    return linalg::condition_number(cov);
}

QueryResult select_nodes(const PreparedProblem& problem, const CovariateMatrix& x, const SelectorConfig& cfg) {
    cfg.validate();
    const Index n = problem.spectrum.size();
    if (cfg.budget > n) {
        throw Error(ErrorCode::BudgetExceedsN,
                    "budget " + std::to_string(cfg.budget) + " exceeds node count " + std::to_string(n));
    }
    if (!cfg.m) {
        const auto tuned = tune_m(problem, x, cfg, cfg.m_grid);
        SelectorConfig fixed = cfg;
        fixed.m = tuned.m;
        return select_nodes(problem, x, fixed);
    }

    const Matrix& basis = problem.smoothed.basis;
    const int m = *cfg.m;
    Rng rng(derive_seed(cfg.seed, {kSelectorStream}));
    QueryState state = init_state(problem.smoothed.rank, cfg.epsilon, m, cfg.budget, cfg.rule);

    QueryResult result;
    result.m_used = m;
    result.rank = problem.smoothed.rank;
    result.spectral_dim = problem.smoothed.spectral_dim;

    for (int round = 0; round < cfg.budget; ++round) {
        RoundTrace tr;
        tr.round = round;
        Vector probs;
        try {
            tr.potential = potential(state);
            probs = sampling_probs(state, basis);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::BarrierViolated) throw;
            throw Error(ErrorCode::BarrierViolated, "round " + std::to_string(round) + ": " + e.what());
        }
        tr.prob_sum = probs.sum();

        const auto queried = node_mask(n, state.nodes);
        std::vector<NodeId> candidates;
        if (cfg.representative) {
            candidates = draw_candidates(probs, m, rng, cfg.epsilon, tr.potential).candidates;
        } else {
            for (NodeId i = 0; i < n; ++i) {
                if (!queried[static_cast<std::size_t>(i)] && probs(i) > 0.0) candidates.push_back(i);
            }
            if (candidates.empty()) {
                for (NodeId i = 0; i < n; ++i) {
                    if (probs(i) > 0.0) candidates.push_back(i);
                }
            }
        }

        Vector scores = Vector::Zero(n);
        tr.omega_hat = std::numeric_limits<double>::quiet_NaN();
        if (static_cast<Index>(state.nodes.size()) < n) {
            try {
                const InfoContext ctx = build_context(problem.spectrum, x, state.nodes, cfg.k, cfg.info);
                scores = info_gain_scores(ctx);
                tr.omega_hat = ctx.omega_hat;
            } catch (const Error& e) {
                // Covariates carry no signal on the remaining nodes: nothing to rank.
                if (e.code() != ErrorCode::DegenerateCovariates) throw;
            }
        }

        const NodeId chosen = argmax_score(scores, candidates);
        tr.node = chosen;
        tr.prob = probs(chosen);
        tr.reselected = state.contains(chosen);
        state = apply_selection(std::move(state), chosen, probs(chosen), basis.row(chosen));
        tr.bracket_ok = barrier_bracket_holds(state);
        result.omega_trace.push_back(tr.omega_hat);
        result.trace.push_back(tr);
    }

    result.rounds = state.t;
    result.nodes = state.nodes;
    for (NodeId v : result.nodes) result.weights.push_back(state.weights.at(v));
    result.condition_number = weighted_condition_number(basis, result.nodes, result.weights);
    return result;
}

QueryResult select_nodes(const Graph& g, const CovariateMatrix& x, const SelectorConfig& cfg) {
    cfg.validate();
    return select_nodes(prepare_problem(g, x, cfg), x, cfg);
}

TuneResult choose_m(std::span<const int> grid, std::span<const double> condition_numbers) {
    if (grid.empty() || grid.size() != condition_numbers.size()) {
        throw Error(ErrorCode::InvalidConfig, "m grid and condition numbers must be non-empty and aligned");
    }
    TuneResult out;
    out.grid.assign(grid.begin(), grid.end());
    out.condition_numbers.assign(condition_numbers.begin(), condition_numbers.end());
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (condition_numbers[j] < 10.0 && (!best || grid[j] > grid[*best])) best = j;
    }
    if (best) {
        out.m = grid[*best];
        return out;
    }
    std::size_t argmin = 0;
    for (std::size_t j = 1; j < grid.size(); ++j) {
        if (condition_numbers[j] < condition_numbers[argmin]) argmin = j;
    }
    out.m = grid[argmin];
    out.no_conditioned_m = true;
    return out;
}

TuneResult tune_m(const PreparedProblem& problem, const CovariateMatrix& x, const SelectorConfig& cfg,
                  std::span<const int> m_grid) {
    if (m_grid.empty()) throw Error(ErrorCode::InvalidConfig, "m grid is empty");
    std::vector<double> conds;
    conds.reserve(m_grid.size());
    for (std::size_t j = 0; j < m_grid.size(); ++j) {
        SelectorConfig run = cfg;
        run.m = m_grid[j];
        run.seed = derive_seed(cfg.seed, {kTuneStream, j});
        if (!(run.epsilon * m_grid[j] < 1.0)) {
            conds.push_back(std::numeric_limits<double>::infinity());
            continue;
        }
        conds.push_back(select_nodes(problem, x, run).condition_number);
    }
    return choose_m(m_grid, conds);
}

TuneResult tune_m(const Graph& g, const CovariateMatrix& x, const SelectorConfig& cfg, std::span<const int> m_grid) {
    return tune_m(prepare_problem(g, x, cfg), x, cfg, m_grid);
}

QueryResult random_select(Index n, int budget, std::uint64_t seed) {
    if (budget < 1) throw Error(ErrorCode::InvalidBudget, "budget must be >= 1");
    if (budget > n) {
        throw Error(ErrorCode::BudgetExceedsN,
                    "budget " + std::to_string(budget) + " exceeds node count " + std::to_string(n));
    }
    Rng rng(derive_seed(seed, {kRandomStream}));
    std::vector<NodeId> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), NodeId{0});
    QueryResult out;
    for (int j = 0; j < budget; ++j) {
        const auto pick = j + static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - j)));
        std::swap(pool[static_cast<std::size_t>(j)], pool[pick]);
        out.nodes.push_back(pool[static_cast<std::size_t>(j)]);
    }
    out.weights.assign(out.nodes.size(), 1.0);
    out.rounds = budget;
    out.condition_number = std::numeric_limits<double>::quiet_NaN();
    return out;
}

QueryResult doptimal_select(const CovariateMatrix& x, int budget, double ridge) {
    const Index n = x.rows();
    const Index p = x.cols();
    if (budget < 1) throw Error(ErrorCode::InvalidBudget, "budget must be >= 1");
    if (budget > n) {
        throw Error(ErrorCode::BudgetExceedsN,
                    "budget " + std::to_string(budget) + " exceeds node count " + std::to_string(n));
    }
    if (!(ridge > 0.0)) throw Error(ErrorCode::InvalidConfig, "ridge must be positive");

    const Matrix& xv = x.values();
    Matrix info = ridge * Matrix::Identity(p, p);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    QueryResult out;
    for (int j = 0; j < budget; ++j) {
        // det(M + x x^T) = det(M) (1 + x M^{-1} x^T): rank the gain factor.
        const Eigen::LLT<Matrix> chol(info);
        const Matrix solved = chol.solve(xv.transpose());  // p x n
        NodeId best = -1;
        double best_gain = -1.0;
        for (NodeId i = 0; i < n; ++i) {
            if (taken[static_cast<std::size_t>(i)]) continue;
            const double gain = xv.row(i).dot(solved.col(i));
            if (gain > best_gain) {
                best_gain = gain;
                best = i;
            }
        }
        taken[static_cast<std::size_t>(best)] = true;
        out.nodes.push_back(best);
        info.noalias() += xv.row(best).transpose() * xv.row(best);
    }
    out.weights.assign(out.nodes.size(), 1.0);
    out.rounds = budget;
    out.condition_number = std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace gaq
