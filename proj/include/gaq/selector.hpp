#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gaq/covariates.hpp"
#include "gaq/graph.hpp"
#include "gaq/informative.hpp"
#include "gaq/representative.hpp"
#include "gaq/types.hpp"

namespace gaq {

struct SelectorConfig {
    int budget = 1;
    /// Defaults to min(p, budget). In LowHigh mode the total is split evenly,
    /// an odd remainder going to the low band.
    std::optional<Index> spectral_dim;
    SpectralMode mode = SpectralMode::LowPass;
    /// Candidate count; empty means tune over m_grid.
    std::optional<int> m = 50;
    std::vector<int> m_grid = {5, 10, 20, 50, 100, 200};
    double epsilon = 1e-3;
    int k = 16;
    std::uint64_t seed = 0;
    double rank_tol = 1e-10;
    UpdateRule rule = UpdateRule::Algorithm;
    /// false drops the barrier-potential candidate draw: every unqueried node
    /// is a candidate in every round.
    bool representative = true;
    InfoOptions info;

    void validate() const;
};

/// Per-round diagnostics.
struct RoundTrace {
    int round = 0;
    NodeId node = -1;
    double prob = 0.0;      // p_i of the chosen node
    double potential = 0.0; // Phi_t before the update
    double prob_sum = 0.0;
    double omega_hat = 0.0; // k-th root of the informativeness eigenvalue
    bool reselected = false;
    bool bracket_ok = true; // barrier bracket after the update
};

struct QueryResult {
    std::vector<NodeId> nodes;   // distinct, in order of first selection
    std::vector<double> weights; // s_i, aligned with nodes
    int rounds = 0;
    /// lambda_max / lambda_min of sum_i s_i v_i^T v_i; +inf when singular,
    /// NaN until evaluated against a basis (baselines).
    double condition_number = 0.0;
    std::vector<double> omega_trace;
    std::vector<RoundTrace> trace;
    int m_used = 0;
    Index rank = 0;
    Index spectral_dim = 0;
};

/// Spectral quantities shared by every strategy on one (graph, X, d).
struct PreparedProblem {
    LaplacianSpectrum spectrum;
    SpectralBasis basis;
    SmoothedCovariates smoothed;
};

Index resolve_spectral_dim(const SelectorConfig& cfg, Index p, Index n);
PreparedProblem prepare_problem(const Graph& g, const CovariateMatrix& x, const SelectorConfig& cfg);
PreparedProblem prepare_problem(LaplacianSpectrum spectrum, const CovariateMatrix& x, const SelectorConfig& cfg);

/// Biased sampling query: barrier-potential candidate draw, then the most
/// informative candidate. Deterministic given cfg.seed.
QueryResult select_nodes(const Graph& g, const CovariateMatrix& x, const SelectorConfig& cfg);
QueryResult select_nodes(const PreparedProblem& problem, const CovariateMatrix& x, const SelectorConfig& cfg);

struct TuneResult {
    int m = 0;
    bool no_conditioned_m = false;
    std::vector<int> grid;
    std::vector<double> condition_numbers;
};

/// Largest m with condition number < 10, else the minimal-condition m (flagged).
TuneResult choose_m(std::span<const int> grid, std::span<const double> condition_numbers);

TuneResult tune_m(const Graph& g, const CovariateMatrix& x, const SelectorConfig& cfg, std::span<const int> m_grid);
TuneResult tune_m(const PreparedProblem& problem, const CovariateMatrix& x, const SelectorConfig& cfg,
                  std::span<const int> m_grid);

/// Uniform sample without replacement, unit weights.
QueryResult random_select(Index n, int budget, std::uint64_t seed);

/// Greedy maximisation of log det(X_S^T X_S + ridge I), unit weights.
QueryResult doptimal_select(const CovariateMatrix& x, int budget, double ridge = 1e-8);

/// Condition number of sum_{i in S} s_i v_i^T v_i.
double weighted_condition_number(const Matrix& basis, const std::vector<NodeId>& nodes,
                                 const std::vector<double>& weights);

}  // namespace gaq
