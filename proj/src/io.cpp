#include "gaq/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "gaq/error.hpp"
#include "toml.hpp"

namespace gaq::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        if (s == "inf" || s == "Inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf" || s == "-Inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
        return std::nullopt;
    }
    return v;
}

std::optional<long long> to_integer(std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

/// Calls fn(line_number, fields) for each non-blank, non-comment line.
/// The first such line is skipped when it is a header (fails `is_data`).
template <typename IsData, typename Fn>
void for_each_row(const std::string& text, IsData is_data, Fn fn) {
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto fields = split_fields(line);
        if (first) {
            first = false;
            if (!is_data(fields)) continue;
        }
        fn(line_no, fields);
    }
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << text;
}

Graph parse_edge_list(const std::string& text, std::optional<Index> n) {
    std::vector<Edge> edges;
    Index max_id = -1;
    for_each_row(
        text, [](const auto& f) { return to_integer(f[0]).has_value(); },
        [&](std::size_t line, const std::vector<std::string_view>& f) {
            if (f.size() < 2 || f.size() > 3) parse_fail(line, "expected src,dst[,weight]");
            const auto src = to_integer(f[0]);
            const auto dst = to_integer(f[1]);
            if (!src || !dst) parse_fail(line, "node ids must be integers");
            Edge e{*src, *dst, 1.0};
            if (f.size() == 3) {
                const auto w = to_double(f[2]);
                if (!w || !std::isfinite(*w)) parse_fail(line, "weight must be a finite number");
                e.weight = *w;
            }
            if (e.src < 0 || e.dst < 0) {
                throw Error(ErrorCode::NodeIdOutOfRange, "line " + std::to_string(line) + ": negative node id");
            }
            max_id = std::max({max_id, e.src, e.dst});
            edges.push_back(e);
        });
    if (edges.empty()) throw Error(ErrorCode::ParseError, "edge list has no edges");
    return build_graph(n.value_or(max_id + 1), edges);
}

Graph read_edge_list(const std::filesystem::path& path, std::optional<Index> n) {
    return parse_edge_list(read_text(path), n);
}

CovariateMatrix parse_covariates(const std::string& text) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    for_each_row(
        text,
        [&](const auto& f) {
            const bool numeric = std::all_of(f.begin(), f.end(), [](auto s) { return to_double(s).has_value(); });
            if (!numeric) {
                for (auto s : f) names.emplace_back(s);
            }
            return numeric;
        },
        [&](std::size_t line, const std::vector<std::string_view>& f) {
            std::vector<double> row;
            for (auto s : f) {
                const auto v = to_double(s);
                if (!v) parse_fail(line, "covariate '" + std::string(s) + "' is not a number");
                row.push_back(*v);
            }
            const std::size_t width = rows.empty() ? (names.empty() ? row.size() : names.size()) : rows.front().size();
            if (row.size() != width) {
                parse_fail(line, "expected " + std::to_string(width) + " columns, got " + std::to_string(row.size()));
            }
            rows.push_back(std::move(row));
        });
    if (rows.empty()) throw Error(ErrorCode::ParseError, "covariate file has no rows");
    Matrix x(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) x(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    return CovariateMatrix(std::move(x), std::move(names));
}

CovariateMatrix read_covariates(const std::filesystem::path& path) { return parse_covariates(read_text(path)); }

std::vector<LabelRow> parse_labels(const std::string& text) {
    std::vector<LabelRow> rows;
    std::set<NodeId> seen;
    for_each_row(
        text, [](const auto& f) { return to_integer(f[0]).has_value(); },
        [&](std::size_t line, const std::vector<std::string_view>& f) {
            if (f.size() != 2) parse_fail(line, "expected node_id,label");
            const auto node = to_integer(f[0]);
            if (!node || *node < 0) parse_fail(line, "node id must be a non-negative integer");
            if (f[1].empty()) parse_fail(line, "empty label");
            if (!seen.insert(*node).second) parse_fail(line, "duplicate label for node " + std::to_string(*node));
            rows.push_back({*node, std::string(f[1])});
        });
    return rows;
}

std::vector<LabelRow> read_labels(const std::filesystem::path& path) { return parse_labels(read_text(path)); }

ClassMap ClassMap::from_labels(const std::vector<LabelRow>& rows) {
    std::set<std::string> distinct;
    for (const auto& r : rows) distinct.insert(r.label);
    ClassMap m{std::vector<std::string>(distinct.begin(), distinct.end())};
    const bool all_int = std::all_of(m.names.begin(), m.names.end(), [](const auto& s) { return to_integer(s); });
    if (all_int) {
        std::sort(m.names.begin(), m.names.end(),
                  [](const auto& a, const auto& b) { return *to_integer(a) < *to_integer(b); });
    }
    return m;
}

Index ClassMap::index_of(const std::string& label) const {
    const auto it = std::find(names.begin(), names.end(), label);
    if (it == names.end()) throw Error(ErrorCode::InvalidClassLabel, "unknown class label '" + label + "'");
    return static_cast<Index>(it - names.begin());
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string_view mode_name(SpectralMode m) noexcept { return m == SpectralMode::LowPass ? "lowpass" : "lowhigh"; }

SpectralMode parse_mode(std::string_view s) {
    if (s == "lowpass") return SpectralMode::LowPass;
    if (s == "lowhigh") return SpectralMode::LowHigh;
    throw Error(ErrorCode::InvalidConfig, "mode must be lowpass or lowhigh, got '" + std::string(s) + "'");
}

std::string_view rule_name(UpdateRule r) noexcept { return r == UpdateRule::Algorithm ? "algorithm" : "prose"; }

UpdateRule parse_rule(std::string_view s) {
    if (s == "algorithm") return UpdateRule::Algorithm;
    if (s == "prose") return UpdateRule::Prose;
    throw Error(ErrorCode::InvalidConfig, "rule must be algorithm or prose, got '" + std::string(s) + "'");
}

Json to_json(const SelectorConfig& cfg) {
    Json j;
    j["budget"] = cfg.budget;
    j["spectral_dim"] = cfg.spectral_dim ? Json(*cfg.spectral_dim) : Json(nullptr);
    j["mode"] = mode_name(cfg.mode);
    j["m"] = cfg.m ? Json(*cfg.m) : Json("auto");
    j["m_grid"] = cfg.m_grid;
    j["epsilon"] = cfg.epsilon;
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["rank_tol"] = cfg.rank_tol;
    j["rule"] = rule_name(cfg.rule);
    j["representative"] = cfg.representative;
    return j;
}

SelectorConfig selector_from_json(const Json& j) {
    SelectorConfig cfg;
    try {
        cfg.budget = j.at("budget").get<int>();
        if (!j.at("spectral_dim").is_null()) cfg.spectral_dim = j.at("spectral_dim").get<Index>();
        cfg.mode = parse_mode(j.at("mode").get<std::string>());
        if (j.at("m").is_string()) {
            cfg.m.reset();
        } else {
            cfg.m = j.at("m").get<int>();
        }
        cfg.m_grid = j.at("m_grid").get<std::vector<int>>();
        cfg.epsilon = j.at("epsilon").get<double>();
        cfg.k = j.at("k").get<int>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.rank_tol = j.at("rank_tol").get<double>();
        cfg.rule = parse_rule(j.at("rule").get<std::string>());
        cfg.representative = j.at("representative").get<bool>();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("selector config: ") + e.what());
    }
    return cfg;
}

Json query_to_json(const QueryResult& q, const SelectorConfig& cfg) {
    Json j;
    j["nodes"] = q.nodes;
    Json weights = Json::array();
    for (double w : q.weights) weights.push_back(number(w));
    j["weights"] = weights;
    j["rounds"] = q.rounds;
    j["condition_number"] = number(q.condition_number);
    j["num_queried"] = q.nodes.size();
    j["m_used"] = q.m_used;
    j["rank"] = q.rank;
    j["spectral_dim"] = q.spectral_dim;
    Json omega = Json::array();
    for (double w : q.omega_trace) omega.push_back(number(w));
    j["omega_trace"] = omega;
    j["seed"] = cfg.seed;
    j["config"] = to_json(cfg);
    return j;
}

QueryFile query_from_json(const Json& j) {
    QueryFile q;
    try {
        q.nodes = j.at("nodes").get<std::vector<NodeId>>();
        for (const auto& w : j.at("weights")) q.weights.push_back(w.get<double>());
        if (q.weights.size() != q.nodes.size()) throw Error(ErrorCode::ParseError, "query weights and nodes differ");
        q.config = selector_from_json(j.at("config"));
        if (j.contains("spectral_dim")) q.config.spectral_dim = j.at("spectral_dim").get<Index>();
        if (j.contains("omega_trace")) {
            for (const auto& w : j.at("omega_trace")) {
                q.omega_trace.push_back(w.is_null() ? std::numeric_limits<double>::quiet_NaN() : w.get<double>());
            }
        }
        const auto& c = j.at("condition_number");
        q.condition_number = c.is_null() ? std::numeric_limits<double>::infinity() : c.get<double>();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("query file: ") + e.what());
    }
    return q;
}

Json model_to_json(const ModelFile& m) {
    Json j;
    j["task"] = m.model.task == Task::Regression ? "regression" : "classification";
    // One row per target: the r-vector for regression, K x r for classification.
    Json coef = Json::array();
    for (Index c = 0; c < m.model.coefficients.cols(); ++c) {
        std::vector<double> row(m.model.coefficients.col(c).data(),
                                m.model.coefficients.col(c).data() + m.model.coefficients.rows());
        coef.push_back(row);
    }
    j["coefficients"] = coef;
    j["rank_used"] = m.model.rank_used;
    j["classes"] = m.classes.names;
    j["single_class"] = m.model.single_class;
    j["spectral_dim"] = m.spectral_dim;
    j["mode"] = mode_name(m.mode);
    j["rank_tol"] = m.rank_tol;
    return j;
}

ModelFile model_from_json(const Json& j) {
    ModelFile m;
    try {
        const auto task = j.at("task").get<std::string>();
        if (task != "regression" && task != "classification") throw Error(ErrorCode::ParseError, "unknown task " + task);
        m.model.task = task == "regression" ? Task::Regression : Task::Classification;
        const auto rows = j.at("coefficients").get<std::vector<std::vector<double>>>();
        if (rows.empty()) throw Error(ErrorCode::ParseError, "model has no coefficients");
        m.model.coefficients.resize(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()));
        for (std::size_t c = 0; c < rows.size(); ++c) {
            if (rows[c].size() != rows.front().size()) throw Error(ErrorCode::ParseError, "ragged coefficients");
            for (std::size_t r = 0; r < rows[c].size(); ++r) {
                m.model.coefficients(static_cast<Index>(r), static_cast<Index>(c)) = rows[c][r];
            }
        }
        m.model.rank_used = j.at("rank_used").get<Index>();
        m.classes.names = j.at("classes").get<std::vector<std::string>>();
        m.model.num_classes = m.classes.size();
        m.model.single_class = j.value("single_class", false);
        m.spectral_dim = j.at("spectral_dim").get<Index>();
        m.mode = parse_mode(j.at("mode").get<std::string>());
        m.rank_tol = j.at("rank_tol").get<double>();
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("model file: ") + e.what());
    }
    return m;
}

namespace {

Json spec_to_json(const SyntheticSpec& s) {
    Json j;
    j["topology"] = topology_name(s.topology);
    if (const auto* ws = std::get_if<WattsStrogatz>(&s.topology)) {
        j["k"] = ws->k;
        j["beta_ws"] = ws->beta;
    } else if (const auto* sbm = std::get_if<StochasticBlock>(&s.topology)) {
        j["communities"] = sbm->communities;
        j["p_in"] = sbm->p_in;
        j["p_out"] = sbm->p_out;
    } else {
        j["attachments"] = std::get<BarabasiAlbert>(s.topology).attachments;
    }
    j["n"] = s.n;
    j["signal"] = {s.signal.first, s.signal.last};
    j["perturb_range"] = {s.perturb_range.first, s.perturb_range.last};
    j["beta"] = std::vector<double>(s.beta.data(), s.beta.data() + s.beta.size());
    j["perturb_mean"] = s.perturb.mean;
    j["perturb_sd"] = s.perturb.sd;
    return j;
}

}  // namespace

Json report_to_json(const ExperimentReport& report) {
    const auto& cfg = report.config;
    Json config;
    config["synthetic"] = spec_to_json(cfg.spec);
    config["selector"] = to_json(cfg.selector);
    std::vector<std::string> names;
    for (Strategy s : cfg.strategies) names.emplace_back(strategy_name(s));
    config["strategies"] = names;
    config["sigma2"] = cfg.sigma2_grid;
    config["budgets"] = cfg.budgets;
    config["seeds"] = cfg.seeds;
    config["seed"] = cfg.seed;
    config["regenerate_topology"] = cfg.regenerate_topology;
    config["doptimal_ridge"] = cfg.doptimal_ridge;

    Json records = Json::array();
    for (const auto& r : report.records) {
        Json j;
        j["topology"] = r.topology;
        j["strategy"] = strategy_name(r.strategy);
        j["seed_index"] = r.seed_index;
        j["seed"] = r.seed;
        j["budget"] = r.budget;
        j["sigma2"] = r.sigma2;
        j["mse"] = number(r.mse);
        j["condition_number"] = number(r.condition_number);
        j["num_queried"] = r.num_queried;
        j["rounds"] = r.rounds;
        j["wall_time_ms"] = r.wall_time_ms;
        j["query_time_per_node_ms"] = r.query_time_per_node_ms;
        j["error"] = r.error ? Json(*r.error) : Json(nullptr);
        records.push_back(j);
    }

    Json aggregates = Json::array();
    for (const auto& a : report.aggregates) {
        Json j;
        j["strategy"] = strategy_name(a.strategy);
        j["budget"] = a.budget;
        j["sigma2"] = a.sigma2;
        j["count"] = a.count;
        j["failures"] = a.failures;
        j["mse_median"] = number(a.mse_median);
        j["mse_iqr"] = number(a.mse_iqr);
        j["condition_median"] = number(a.condition_median);
        j["condition_iqr"] = number(a.condition_iqr);
        aggregates.push_back(j);
    }
    return Json{{"config", config}, {"records", records}, {"aggregates", aggregates}};
}

std::vector<RunRecord> records_from_json(const Json& j) {
    std::vector<RunRecord> out;
    try {
        for (const auto& r : j.at("records")) {
            RunRecord rec;
            rec.topology = r.at("topology").get<std::string>();
            rec.strategy = parse_strategy(r.at("strategy").get<std::string>());
            rec.seed_index = r.at("seed_index").get<int>();
            rec.seed = r.at("seed").get<std::uint64_t>();
            rec.budget = r.at("budget").get<int>();
            rec.sigma2 = r.at("sigma2").get<double>();
            rec.mse = r.at("mse").is_null() ? std::numeric_limits<double>::quiet_NaN() : r.at("mse").get<double>();
            const auto& c = r.at("condition_number");
            if (c.is_null()) {
                rec.condition_number = r.at("error").is_null() ? std::numeric_limits<double>::infinity()
                                                               : std::numeric_limits<double>::quiet_NaN();
            } else {
                rec.condition_number = c.get<double>();
            }
            rec.num_queried = r.at("num_queried").get<Index>();
            rec.rounds = r.at("rounds").get<int>();
            rec.wall_time_ms = r.at("wall_time_ms").get<double>();
            rec.query_time_per_node_ms = r.at("query_time_per_node_ms").get<double>();
            if (!r.at("error").is_null()) rec.error = r.at("error").get<std::string>();
            out.push_back(std::move(rec));
        }
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("report: ") + e.what());
    }
    return out;
}

std::string curves_csv(const std::vector<CellAggregate>& aggregates) {
    std::ostringstream out;
    out.precision(17);
    out << "strategy,budget,sigma2,count,failures,mse_median,mse_iqr,condition_median,condition_iqr\n";
    for (const auto& a : aggregates) {
        out << strategy_name(a.strategy) << ',' << a.budget << ',' << a.sigma2 << ',' << a.count << ',' << a.failures
            << ',' << a.mse_median << ',' << a.mse_iqr << ',' << a.condition_median << ',' << a.condition_iqr << '\n';
    }
    return out.str();
}

namespace {

template <typename T>
std::optional<T> get(const toml::table& t, std::string_view key) {
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    if (auto v = node->value<T>()) return *v;
    throw Error(ErrorCode::InvalidConfig, "config key '" + std::string(key) + "' has the wrong type");
}

template <typename T>
std::optional<std::vector<T>> get_array(const toml::table& t, std::string_view key) {
    const auto* node = t.get(key);
    if (!node) return std::nullopt;
    const auto* arr = node->as_array();
    if (!arr) throw Error(ErrorCode::InvalidConfig, "config key '" + std::string(key) + "' must be an array");
    std::vector<T> out;
    for (const auto& el : *arr) {
        auto v = el.value<T>();
        if (!v) throw Error(ErrorCode::InvalidConfig, "config key '" + std::string(key) + "' has a wrong element type");
        out.push_back(*v);
    }
    return out;
}

IndexRange range_from(const std::vector<std::int64_t>& v, std::string_view key) {
    if (v.size() != 2) throw Error(ErrorCode::InvalidConfig, std::string(key) + " must be [first, last]");
    return {v[0], v[1]};
}

void apply_selector(const toml::table& t, SelectorConfig& cfg) {
    if (auto v = get<std::int64_t>(t, "budget")) cfg.budget = static_cast<int>(*v);
    if (auto v = get<std::int64_t>(t, "spectral_dim")) cfg.spectral_dim = *v;
    if (auto v = get<std::string>(t, "mode")) cfg.mode = parse_mode(*v);
    if (const auto* node = t.get("m")) {
        if (auto s = node->value<std::string>()) {
            if (*s != "auto") throw Error(ErrorCode::InvalidConfig, "m must be an integer or \"auto\"");
            cfg.m.reset();
        } else if (auto i = node->value<std::int64_t>()) {
            cfg.m = static_cast<int>(*i);
        } else {
            throw Error(ErrorCode::InvalidConfig, "m must be an integer or \"auto\"");
        }
    }
    if (auto v = get_array<std::int64_t>(t, "m_grid")) cfg.m_grid.assign(v->begin(), v->end());
    if (auto v = get<double>(t, "epsilon")) cfg.epsilon = *v;
    if (auto v = get<std::int64_t>(t, "k")) cfg.k = static_cast<int>(*v);
    if (auto v = get<std::int64_t>(t, "seed")) cfg.seed = static_cast<std::uint64_t>(*v);
    if (auto v = get<double>(t, "rank_tol")) cfg.rank_tol = *v;
    if (auto v = get<std::string>(t, "rule")) cfg.rule = parse_rule(*v);
    if (auto v = get<bool>(t, "representative")) cfg.representative = *v;
}

SyntheticSpec synthetic_from(const toml::table& t) {
    const auto topo = get<std::string>(t, "topology").value_or("ws");
    SyntheticSpec s;
    if (topo == "ws") {
        s = SyntheticSpec::watts_strogatz();
        auto& ws = std::get<WattsStrogatz>(s.topology);
        if (auto v = get<std::int64_t>(t, "k")) ws.k = static_cast<int>(*v);
        if (auto v = get<double>(t, "beta_ws")) ws.beta = *v;
    } else if (topo == "sbm") {
        s = SyntheticSpec::stochastic_block();
        auto& sbm = std::get<StochasticBlock>(s.topology);
        if (auto v = get<std::int64_t>(t, "communities")) sbm.communities = static_cast<int>(*v);
        if (auto v = get<double>(t, "p_in")) sbm.p_in = *v;
        if (auto v = get<double>(t, "p_out")) sbm.p_out = *v;
    } else if (topo == "ba") {
        s = SyntheticSpec::barabasi_albert();
        auto& ba = std::get<BarabasiAlbert>(s.topology);
        if (auto v = get<std::int64_t>(t, "attachments")) ba.attachments = static_cast<int>(*v);
    } else {
        throw Error(ErrorCode::InvalidConfig, "topology must be ws, sbm or ba");
    }
    if (auto v = get<std::int64_t>(t, "n")) s.n = *v;
    if (auto v = get_array<std::int64_t>(t, "signal")) s.signal = range_from(*v, "signal");
    if (auto v = get_array<std::int64_t>(t, "perturb_range")) s.perturb_range = range_from(*v, "perturb_range");
    if (auto v = get_array<double>(t, "beta")) {
        s.beta = Eigen::Map<const Vector>(v->data(), static_cast<Index>(v->size()));
    } else if (s.beta.size() != s.signal.size()) {
        s.beta = Vector::Constant(s.signal.size(), 5.0);
    }
    if (auto v = get<double>(t, "noise_sigma2")) s.noise_sigma2 = *v;
    if (auto v = get<double>(t, "perturb_mean")) s.perturb.mean = *v;
    if (auto v = get<double>(t, "perturb_sd")) s.perturb.sd = *v;
    if (auto v = get<std::int64_t>(t, "seed")) s.seed = static_cast<std::uint64_t>(*v);
    return s;
}

void apply_simulate(const toml::table& t, SimulationConfig& cfg) {
    if (auto v = get_array<std::string>(t, "strategies")) {
        cfg.strategies.clear();
        for (const auto& s : *v) cfg.strategies.push_back(parse_strategy(s));
    }
    if (auto v = get_array<double>(t, "sigma2")) cfg.sigma2_grid = *v;
    if (auto v = get_array<std::int64_t>(t, "budgets")) cfg.budgets.assign(v->begin(), v->end());
    if (auto v = get<std::int64_t>(t, "seeds")) cfg.seeds = static_cast<int>(*v);
    if (auto v = get<std::int64_t>(t, "seed")) cfg.seed = static_cast<std::uint64_t>(*v);
    if (auto v = get<bool>(t, "regenerate_topology")) cfg.regenerate_topology = *v;
    if (auto v = get<double>(t, "doptimal_ridge")) cfg.doptimal_ridge = *v;
    if (auto v = get<std::int64_t>(t, "threads")) cfg.threads = static_cast<int>(*v);
    if (auto v = get<bool>(t, "ablation"); v && *v) {
        if (std::find(cfg.strategies.begin(), cfg.strategies.end(), Strategy::ProposedNoRepr) == cfg.strategies.end()) {
            cfg.strategies.push_back(Strategy::ProposedNoRepr);
        }
    }
}

const toml::table* section(const toml::table& root, std::string_view name) {
    const auto* node = root.get(name);
    if (!node) return nullptr;
    const auto* t = node->as_table();
    if (!t) throw Error(ErrorCode::InvalidConfig, "[" + std::string(name) + "] must be a table");
    return t;
}

}  // namespace

AppConfig parse_config(const std::string& text) {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(e.source().begin.line) + ": " +
                                               std::string(e.description()));
    }
    AppConfig cfg;
    if (const auto* t = section(root, "graph")) {
        cfg.graph_path = get<std::string>(*t, "path");
        if (auto v = get<std::int64_t>(*t, "num_nodes")) cfg.num_nodes = *v;
    }
    if (const auto* t = section(root, "covariates")) {
        cfg.covariates_path = get<std::string>(*t, "path");
        cfg.zscore = get<bool>(*t, "zscore").value_or(false);
    }
    if (const auto* t = section(root, "labels")) cfg.labels_path = get<std::string>(*t, "path");
    if (const auto* t = section(root, "selector")) apply_selector(*t, cfg.selector);
    cfg.simulation.selector = cfg.selector;
    if (const auto* t = section(root, "synthetic")) cfg.simulation.spec = synthetic_from(*t);
    if (const auto* t = section(root, "simulate")) apply_simulate(*t, cfg.simulation);
    return cfg;
}

AppConfig load_config(const std::filesystem::path& path) { return parse_config(read_text(path)); }

}  // namespace gaq::io
