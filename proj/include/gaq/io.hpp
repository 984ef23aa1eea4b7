#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaq/covariates.hpp"
#include "gaq/graph.hpp"
#include "gaq/harness.hpp"
#include "gaq/recovery.hpp"
#include "gaq/selector.hpp"

namespace gaq::io {

using Json = nlohmann::json;

/// `src,dst[,weight]` per line; optional header, `#` comments. Node count is
/// max id + 1 unless given.
Graph read_edge_list(const std::filesystem::path& path, std::optional<Index> n = std::nullopt);
Graph parse_edge_list(const std::string& text, std::optional<Index> n = std::nullopt);

/// One row per node in id order; optional header row of column names.
CovariateMatrix read_covariates(const std::filesystem::path& path);
CovariateMatrix parse_covariates(const std::string& text);

struct LabelRow {
    NodeId node = 0;
    std::string label;
};

/// `node_id,label`; optional header.
std::vector<LabelRow> read_labels(const std::filesystem::path& path);
std::vector<LabelRow> parse_labels(const std::string& text);

/// Stable class index: numeric order when every label is an integer,
/// lexicographic otherwise.
struct ClassMap {
    std::vector<std::string> names;

    static ClassMap from_labels(const std::vector<LabelRow>& rows);
    Index index_of(const std::string& label) const;
    Index size() const { return static_cast<Index>(names.size()); }
};

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Non-finite doubles become null.
Json number(double v);

Json to_json(const SelectorConfig& cfg);
SelectorConfig selector_from_json(const Json& j);

Json query_to_json(const QueryResult& q, const SelectorConfig& cfg);

/// Query set read back from query_to_json output.
struct QueryFile {
    std::vector<NodeId> nodes;
    std::vector<double> weights;
    SelectorConfig config;
    std::vector<double> omega_trace;
    double condition_number = 0.0;
};
QueryFile query_from_json(const Json& j);

struct ModelFile {
    RecoveryModel model;
    ClassMap classes;
    Index spectral_dim = 0;
    SpectralMode mode = SpectralMode::LowPass;
    double rank_tol = 1e-10;
};
Json model_to_json(const ModelFile& m);
ModelFile model_from_json(const Json& j);

Json report_to_json(const ExperimentReport& report);
std::vector<RunRecord> records_from_json(const Json& j);
std::string curves_csv(const std::vector<CellAggregate>& aggregates);

/// Canonical serialization (sorted keys, 2-space indent, trailing newline).
std::string dump(const Json& j);

std::string_view mode_name(SpectralMode m) noexcept;
SpectralMode parse_mode(std::string_view s);
std::string_view rule_name(UpdateRule r) noexcept;
UpdateRule parse_rule(std::string_view s);

/// Paths and settings from a TOML config file with optional [graph],
/// [covariates], [labels], [selector], [synthetic] and [simulate] tables.
struct AppConfig {
    std::optional<std::string> graph_path;
    std::optional<Index> num_nodes;
    std::optional<std::string> covariates_path;
    bool zscore = false;
    std::optional<std::string> labels_path;
    SelectorConfig selector;
    SimulationConfig simulation;
};

AppConfig load_config(const std::filesystem::path& path);
AppConfig parse_config(const std::string& text);

}  // namespace gaq::io
