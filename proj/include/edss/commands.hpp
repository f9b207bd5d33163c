// Copyright 2026 The EDSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "edss/golden.hpp"
#include "edss/report.hpp"

namespace edss {

struct CommandResult {
    Json document;
    std::string text;  ///< what the command writes (JSON or CSV)
    int exit_status = 0;
};

struct ListComparison {
    bool length_match = false;
    double max_error = std::numeric_limits<double>::infinity();
    bool pass = false;
};

/// Element-wise comparison of two eigenvalue lists after sorting both ascending.
inline ListComparison compare_lists(std::vector<double> expected, std::vector<double> computed, double tolerance) {
    std::sort(expected.begin(), expected.end());
    std::sort(computed.begin(), computed.end());
    ListComparison c;
    c.length_match = expected.size() == computed.size();
    if (!c.length_match) {
        return c;
    }
    c.max_error = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        c.max_error = std::max(c.max_error, std::abs(expected[i] - computed[i]));
    }
    c.pass = c.max_error <= tolerance;
    return c;
}

namespace detail {

inline Json error_json(double e) { return std::isfinite(e) ? Json(e) : Json(nullptr); }

inline Json eigen_row_json(const golden::EigenRow &row, const BipartitionEntry &entry, double tolerance,
                           const std::string &id) {
    const auto cmp = compare_lists(row.expected, entry.negative_eigenvalues, tolerance);
    Json j{{"id", id},
           {"source", row.source},
           {"bipartition", row.cut},
           {"printed", row.printed},
           {"expected", row.expected},
           {"computed", entry.negative_eigenvalues},
           {"length_match", cmp.length_match},
           {"max_abs_error", error_json(cmp.max_error)},
           {"tolerance", tolerance},
           {"status", cmp.pass ? "pass" : "fail"}};
    if (!row.note.empty()) {
        j["note"] = row.note;
    }
    return j;
}

inline const BipartitionEntry *find_entry(const BipartitionReport &r, const std::string &name) {
    for (const auto &e : r.entries) {
        if (e.bipartition.name() == name) {
            return &e;
        }
    }
    return nullptr;
}

/// Golden rows for the reference four-node configurations, if `c` is one of them.
inline std::optional<std::vector<golden::EigenRow>> golden_rows_for(const RunConfig &c) {
    if (c.topology.nodes != 4) {
        return std::nullopt;
    }
    const auto kind = c.topology.kind;
    if (kind == TopologyKind::ring && c.variant == Variant::single_carrier) return golden::ring_single();
    if (kind == TopologyKind::ring && c.variant == Variant::multi_carrier) return golden::ring_multi();
    if (kind == TopologyKind::ring && c.variant == Variant::relay) return golden::relay();
    if (kind == TopologyKind::star && c.topology.center.value_or(1) == 1) {
        if (c.variant == Variant::single_carrier) return golden::star_single();
        if (c.variant == Variant::star_qudit || c.variant == Variant::multi_carrier) return golden::star_qudit();
    }
    return std::nullopt;
}

/// Report entry for a golden row; builds it on demand for cuts outside the family (e.g. K'|nodes).
inline BipartitionEntry entry_for(const DensityMatrix &state, const BipartitionReport &report,
                                  const std::string &cut) {
    if (const auto *e = find_entry(report, cut)) {
        return *e;
    }
    const auto bar = cut.find('|');
    const std::string lhs = cut.substr(0, bar);
    // labels in the left-hand side, matched greedily in register order
    std::vector<std::string> side;
    std::size_t pos = 0;
    while (pos < lhs.size()) {
        bool matched = false;
        for (const auto &l : state.reg().labels()) {
            if (lhs.compare(pos, l.size(), l) == 0 &&
                (pos + l.size() == lhs.size() || lhs[pos + l.size()] == 'Q' || lhs[pos + l.size()] == 'K')) {
                side.push_back(l);
                pos += l.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ArgumentError("cannot resolve bipartition '" + cut + "'");
        }
    }
    return make_entry(state, Bipartition::of(state.reg(), side));
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

/// Runs one protocol and reports the certificate trail, bipartition spectra and optional extras.
inline CommandResult cmd_simulate(const RunConfig &config) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    const Topology topology = config.topology.build();
    const ProtocolSchedule schedule = build_schedule(topology, config.variant);
    const ProtocolTrace trace = run(schedule, initial_state(topology, config.variant));
    const DensityMatrix &final_state = trace.final_state();
    const BipartitionReport report = bipartition_report(final_state, config.family);

    const auto cert = carrier_separability_certificate(trace);
    const bool all_zero = std::all_of(cert.begin(), cert.end(), [](bool b) { return b; });

    Json doc{{"schema_version", kSchemaVersion},
             {"artifact_version", kArtifactVersion},
             {"command", "simulate"},
             {"config", to_json(config)},
             {"schedule", to_json(schedule)},
             {"steps", to_json(trace)},
             {"carrier_certificate",
              {{"criterion", "zero negativity (PPT) across every carrier-isolating cut"},
               {"threshold", kCarrierSeparability},
               {"all_zero_negativity", all_zero}}},
             {"final_state", {{"register", final_state.reg().labels()}, {"bipartitions", to_json(report)}}}};

    const auto carriers = carrier_labels_of(final_state.reg());
    std::optional<DensityMatrix> network;
    if (!carriers.empty()) {
        network = post_select_carriers(final_state, carriers);
        Json ps{{"carriers", carriers}, {"projected_on", "A"}};
        if (network->reg().size() >= 2) {
            ps["bipartitions"] = to_json(bipartition_report(*network, Family::nodes));
        }
        doc["post_selection"] = ps;
    }
    if (config.decompose && network) {
        doc["decomposition"] = to_json(decompose_final_state(*network, topology));
    }
    if (config.with_discord) {
        doc["discord"] = to_json(discord(pair_seed_state("A", "B"), "B"));
    }

    int status = 0;
    if (config.check) {
        Json checks = Json::array();
        if (const auto rows = detail::golden_rows_for(config)) {
            for (const auto &row : *rows) {
                const auto entry = detail::entry_for(final_state, report, row.cut);
                auto j = detail::eigen_row_json(row, entry, config.tolerance, row.cut);
                if (j["status"] != "pass") {
                    status = 1;
                }
                checks.push_back(std::move(j));
            }
        }
        doc["golden_checks"] = checks;
    }
    if (config.timing) {
        doc["timing"] = {{"seconds", detail::seconds_since(t0)}};
    }

    CommandResult result{doc, {}, status};
    if (config.format == OutputFormat::csv) {
        std::string csv = "bipartition,negativity,negative_eigenvalues\n";
        for (const auto &e : report.entries) {
            csv += e.bipartition.name() + "," + format_number(e.negativity) + ",";
            for (std::size_t i = 0; i < e.negative_eigenvalues.size(); ++i) {
                csv += (i ? ";" : "") + format_number(e.negative_eigenvalues[i]);
            }
            csv += "\n";
        }
        result.text = csv;
    } else {
        result.text = dump(doc);
    }
    return result;
}

struct TablesOptions {
    double tolerance = golden::kEigenTolerance;
    bool timing = false;
};

/**
 * Reproduces both eigenvalue tables, the four averages, the relay spectra and
 * the seed discord. Exit status is nonzero if any row fails; documented
 * deviations do not count as failures.
 */
inline CommandResult cmd_tables(const TablesOptions &opt = {}) {
    if (!(opt.tolerance > 0.0)) {
        throw ArgumentError("tolerance must be positive");
    }
    const auto t0 = std::chrono::steady_clock::now();
    Json rows = Json::array();
    std::size_t n_pass = 0;
    std::size_t n_fail = 0;
    std::size_t n_dev = 0;
    auto tally = [&](const Json &row) {
        const auto s = row["status"].get<std::string>();
        if (s == "pass") ++n_pass;
        else if (s == "fail") ++n_fail;
        else ++n_dev;
    };

    struct Case {
        std::string id;
        TopologySpec topology;
        Variant variant;
        std::vector<golden::EigenRow> rows;
    };
    const std::vector<Case> cases{
        {"ring.single", {TopologyKind::ring, 4, std::nullopt, {}}, Variant::single_carrier, golden::ring_single()},
        {"ring.multi", {TopologyKind::ring, 4, std::nullopt, {}}, Variant::multi_carrier, golden::ring_multi()},
        {"star.single", {TopologyKind::star, 4, 1, {}}, Variant::single_carrier, golden::star_single()},
        {"star.qudit", {TopologyKind::star, 4, 1, {}}, Variant::star_qudit, golden::star_qudit()},
        {"relay", {TopologyKind::ring, 4, std::nullopt, {}}, Variant::relay, golden::relay()},
    };
    std::vector<std::pair<std::string, double>> averages;
    for (const auto &c : cases) {
        const auto topo = c.topology.build();
        const auto trace = run(build_schedule(topo, c.variant), initial_state(topo, c.variant));
        const auto report = bipartition_report(trace.final_state(), Family::nodes);
        averages.emplace_back(c.id, report.aggregates.geometric_average);
        for (const auto &row : c.rows) {
            const auto entry = detail::entry_for(trace.final_state(), report, row.cut);
            auto j = detail::eigen_row_json(row, entry, opt.tolerance, c.id + "." + row.cut);
            tally(j);
            rows.push_back(std::move(j));
        }
    }
    for (const auto &g : golden::averages()) {
        const auto id = g.id.substr(0, g.id.rfind('.'));
        const auto it = std::find_if(averages.begin(), averages.end(), [&](const auto &a) { return a.first == id; });
        const double computed = it->second;
        const double err = std::abs(computed - g.expected);
        std::string status = err <= g.tolerance ? "pass" : (g.documented_deviation ? "deviation" : "fail");
        Json j{{"id", g.id},           {"source", g.source},       {"expected", g.expected},
               {"computed", computed}, {"max_abs_error", err},     {"tolerance", g.tolerance},
               {"status", status}};
        if (!g.note.empty() && status != "pass") {
            j["note"] = g.note;
        }
        tally(j);
        rows.push_back(std::move(j));
    }
    {
        const auto g = golden::seed_discord();
        const auto d = discord(pair_seed_state("A", "B"), "B", LogBase::two);
        const double err = std::abs(d.value - g.expected);
        Json j{{"id", g.id},         {"source", g.source},   {"expected", g.expected},  {"computed", d.value},
               {"max_abs_error", err}, {"tolerance", g.tolerance}, {"status", err <= g.tolerance ? "pass" : "fail"},
               {"base", "2"}};
        tally(j);
        rows.push_back(std::move(j));
    }

    Json doc{{"schema_version", kSchemaVersion},
             {"artifact_version", kArtifactVersion},
             {"command", "tables"},
             {"tolerance", opt.tolerance},
             {"rows", rows},
             {"summary", {{"pass", n_pass}, {"fail", n_fail}, {"deviation", n_dev}}},
             {"all_pass", n_fail == 0}};
    if (opt.timing) {
        doc["timing"] = {{"seconds", detail::seconds_since(t0)}};
    }
    return {doc, dump(doc), n_fail == 0 ? 0 : 1};
}

struct TrendOptions {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 8;
    double band = 0.05;  ///< allowed relative deviation of the total from its reference value
    OutputFormat format = OutputFormat::json;
    bool timing = false;
};

struct TrendPoint {
    std::size_t n = 0;
    double geometric_average = 0.0;
    double total = 0.0;
    double family_sum = 0.0;
    std::size_t family_size = 0;
};

inline TrendPoint trend_point(std::size_t n) {
    const auto topo = Topology::ring(n);
    const auto trace = run(build_schedule(topo, Variant::single_carrier), initial_state(topo, Variant::single_carrier),
                           RunOptions{false});
    const auto report = bipartition_report(trace.final_state(), Family::nodes);
    return {n, report.aggregates.geometric_average, report.aggregates.total, report.aggregates.family_sum,
            report.entries.size()};
}

inline std::string trend_csv(const std::vector<TrendPoint> &series) {
    std::string csv = "n,geometric_average,total\n";
    for (const auto &p : series) {
        csv += std::to_string(p.n) + "," + format_number(p.geometric_average) + "," + format_number(p.total) + "\n";
    }
    return csv;
}

/**
 * Ring single-carrier sweep: average negativity per N, and the total over the
 * single-node cuts. Checks strict decrease of the average and constancy of the
 * total within `band` of its N = 4 value (N = min_nodes when 4 is absent).
 */
inline CommandResult cmd_trend(const TrendOptions &opt) {
    if (opt.min_nodes < 3 || opt.max_nodes < opt.min_nodes) {
        throw ArgumentError("trend: need 3 <= min nodes <= max nodes");
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TrendPoint> series;
    bool truncated = false;
    for (std::size_t n = opt.min_nodes; n <= opt.max_nodes; ++n) {
        if (n + 1 > max_qubits()) {
            truncated = true;
            break;
        }
        series.push_back(trend_point(n));
    }
    bool decreasing = series.size() >= 2;
    for (std::size_t i = 1; i < series.size(); ++i) {
        decreasing = decreasing && series[i].geometric_average < series[i - 1].geometric_average;
    }
    const auto ref = std::find_if(series.begin(), series.end(), [](const TrendPoint &p) { return p.n == 4; });
    const double ref_total = series.empty() ? 0.0 : (ref != series.end() ? ref->total : series.front().total);
    double max_dev = 0.0;
    for (const auto &p : series) {
        max_dev = std::max(max_dev, std::abs(p.total - ref_total) / ref_total);
    }
    const bool constant = !series.empty() && max_dev <= opt.band;

    Json points = Json::array();
    for (const auto &p : series) {
        points.push_back({{"n", p.n},
                          {"geometric_average", p.geometric_average},
                          {"total", p.total},
                          {"family_sum", p.family_sum},
                          {"family_size", p.family_size}});
    }
    Json doc{{"schema_version", kSchemaVersion},
             {"artifact_version", kArtifactVersion},
             {"command", "trend"},
             {"topology", "ring"},
             {"variant", "single"},
             {"series", points},
             {"truncated", truncated},
             {"checks",
              {{"geometric_average_strictly_decreasing", decreasing},
               {"total_constant",
                {{"reference_n", ref != series.end() ? 4 : opt.min_nodes},
                 {"band", opt.band},
                 {"max_relative_deviation", max_dev},
                 {"pass", constant}}}}}};
    if (truncated) {
        doc["truncated_at"] = series.empty() ? opt.min_nodes : series.back().n;
    }
    if (opt.timing) {
        doc["timing"] = {{"seconds", detail::seconds_since(t0)}};
    }
    const int status = decreasing && constant ? 0 : 1;
    return {doc, opt.format == OutputFormat::csv ? trend_csv(series) : dump(doc), status};
}

enum class DiscordInput { seed, product, classical };

inline DiscordInput parse_discord_input(const std::string &s) {
    if (s == "seed") return DiscordInput::seed;
    if (s == "product") return DiscordInput::product;
    if (s == "classical") return DiscordInput::classical;
    throw ArgumentError("unknown discord state '" + s + "' (expected seed, product or classical)");
}

inline std::string to_string(DiscordInput s) {
    switch (s) {
    case DiscordInput::seed: return "seed";
    case DiscordInput::product: return "product";
    case DiscordInput::classical: return "classical";
    }
    return "?";
}

/// Two-qubit test states on (A, B).
inline DensityMatrix discord_input_state(DiscordInput s) {
    const auto reg = Register::qubits({"A", "B"});
    switch (s) {
    case DiscordInput::seed: return pair_seed_state("A", "B");
    case DiscordInput::product: {
        const Matrix b = 0.3 * projector(KetLabel::zero) + 0.7 * projector(KetLabel::R);
        return {reg, kron(carrier_matrix(), b)};
    }
    case DiscordInput::classical: {
        Matrix m = Matrix::Zero(4, 4);
        m(0, 0) = m(3, 3) = 0.5;
        return {reg, m};
    }
    }
    throw ArgumentError("unknown discord state");
}

struct DiscordConfig {
    DiscordInput state = DiscordInput::seed;
    std::string measured = "B";
    LogBase base = LogBase::two;
    bool report_angles = false;
    std::size_t sweep = 0;  ///< grid size per angle for the diagnostic sweep; 0 disables it
    std::optional<double> tolerance;
    bool timing = false;
};

inline CommandResult cmd_discord(const DiscordConfig &cfg) {
    if (cfg.tolerance && !(*cfg.tolerance > 0.0)) {
        throw ArgumentError("tolerance must be positive");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const auto rho = discord_input_state(cfg.state);
    const auto d = discord(rho, cfg.measured, cfg.base);
    Json doc{{"schema_version", kSchemaVersion},
             {"artifact_version", kArtifactVersion},
             {"command", "discord"},
             {"state", to_string(cfg.state)},
             {"measured", cfg.measured},
             {"result", to_json(d)}};

    // golden value only exists for the seed in base 2; the other states must give zero
    int status = 0;
    std::optional<double> expected;
    double tol = 1e-8;
    if (cfg.state == DiscordInput::seed) {
        if (cfg.base == LogBase::two) {
            expected = golden::seed_discord().expected;
            tol = golden::seed_discord().tolerance;
        }
    } else {
        expected = 0.0;
    }
    if (cfg.tolerance) {
        tol = *cfg.tolerance;
    }
    if (expected) {
        const double err = std::abs(d.value - *expected);
        doc["golden"] = {{"expected", *expected}, {"tolerance", tol}, {"max_abs_error", err}, {"pass", err <= tol}};
        status = err <= tol ? 0 : 1;
    }
    if (cfg.report_angles) {
        const double again = measured_entropy(rho, cfg.measured, d.theta, d.phi, cfg.base) - d.state_entropy;
        doc["angles"] = {{"theta", d.theta},
                         {"phi", d.phi},
                         {"reevaluated_value", again},
                         {"reevaluation_error", std::abs(again - d.value)}};
    }
    if (cfg.sweep > 0) {
        Json grid = Json::array();
        for (const auto &[t, p, s] : discord_landscape(rho, cfg.measured, cfg.base, cfg.sweep, cfg.sweep)) {
            grid.push_back({t, p, s - d.state_entropy});
        }
        doc["sweep"] = {{"columns", {"theta", "phi", "value"}}, {"points", grid}};
    }
    if (cfg.timing) {
        doc["timing"] = {{"seconds", detail::seconds_since(t0)}};
    }
    return {doc, dump(doc), status};
}

} // namespace edss
