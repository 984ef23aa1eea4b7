#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaq/selector.hpp"
#include "gaq/synthgen.hpp"

namespace gaq {

enum class Strategy { Proposed, Random, DOptimal, ProposedNoRepr, ProposedNoCov };

std::string_view strategy_name(Strategy s) noexcept;
Strategy parse_strategy(std::string_view name);

/**
 * Monte-Carlo grid over strategies x budgets x seeds x noise levels.
 *
 * The network is generated once from `seed` (per seed index when
 * regenerate_topology is set); X and a standard-normal noise vector are drawn
 * per seed index, the noise scaled by sqrt(sigma2) at each level. A strategy
 * selects once per (seed index, budget) and the selection is reused across
 * noise levels.
 */
struct SimulationConfig {
    SyntheticSpec spec;
    /// budget and seed are overridden per cell; spectral_dim defaults to the
    /// width of the signal range.
    SelectorConfig selector;
    std::vector<Strategy> strategies = {Strategy::Proposed, Strategy::Random, Strategy::DOptimal};
    std::vector<double> sigma2_grid = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    std::vector<int> budgets = {25};
    int seeds = 10;
    std::uint64_t seed = 0;
    bool regenerate_topology = false;
    double doptimal_ridge = 1e-8;
    int threads = 1;

    void validate() const;
};

struct RunRecord {
    std::string topology;
    Strategy strategy = Strategy::Proposed;
    int seed_index = 0;
    std::uint64_t seed = 0;  // selection seed
    int budget = 0;
    double sigma2 = 0.0;
    double mse = 0.0;
    double condition_number = 0.0;
    Index num_queried = 0;
    int rounds = 0;
    double wall_time_ms = 0.0;
    double query_time_per_node_ms = 0.0;
    std::optional<std::string> error;
};

struct CellAggregate {
    Strategy strategy = Strategy::Proposed;
    int budget = 0;
    double sigma2 = 0.0;
    int count = 0;     // successful records
    int failures = 0;
    double mse_median = 0.0;
    double mse_iqr = 0.0;
    double condition_median = 0.0;
    double condition_iqr = 0.0;
};

struct ExperimentReport {
    SimulationConfig config;
    std::vector<RunRecord> records;
    std::vector<CellAggregate> aggregates;
};

ExperimentReport run_simulation(const SimulationConfig& cfg);

/// Cells in first-appearance order of (strategy, budget, sigma2).
std::vector<CellAggregate> aggregate_records(const std::vector<RunRecord>& records);

/// Linear-interpolation quantile of the sorted sample (q in [0, 1]).
double quantile(std::vector<double> values, double q);

}  // namespace gaq
