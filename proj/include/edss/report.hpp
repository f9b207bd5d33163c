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

#include <cstddef>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edss/certificate.hpp"
#include "edss/decomposition.hpp"
#include "edss/discord.hpp"
#include "edss/error.hpp"
#include "edss/golden.hpp"
#include "edss/metrics.hpp"
#include "edss/protocol.hpp"
#include "edss/states.hpp"

namespace edss {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kArtifactVersion = "1.0.0";

/// Topology as written in a config file or on the command line.
struct TopologySpec {
    TopologyKind kind = TopologyKind::ring;
    std::size_t nodes = 4;
    std::optional<std::size_t> center;
    std::vector<NodePair> pairs;

    [[nodiscard]] Topology build() const {
        switch (kind) {
        case TopologyKind::linear: return Topology::linear(nodes);
        case TopologyKind::ring: return Topology::ring(nodes);
        case TopologyKind::star: return Topology::star(nodes, center.value_or(1));
        case TopologyKind::custom:
            if (pairs.empty()) {
                throw ArgumentError("custom topology needs an explicit pair list");
            }
            return Topology::custom(nodes, pairs);
        case TopologyKind::appendix_a: return Topology::appendix_a(nodes);
        }
        throw ArgumentError("unknown topology kind");
    }
};

enum class OutputFormat { json, csv };

struct RunConfig {
    TopologySpec topology;
    Variant variant = Variant::single_carrier;
    Family family = Family::nodes;
    OutputFormat format = OutputFormat::json;
    std::string out;  ///< empty: standard output
    double tolerance = golden::kEigenTolerance;
    bool decompose = false;
    bool with_discord = false;
    bool timing = false;
    bool check = false;
};

/// Throws ArgumentError when the configuration is inconsistent.
inline void validate(const RunConfig &c) {
    if (!(c.tolerance > 0.0)) {
        throw ArgumentError("tolerance must be positive");
    }
    if (c.topology.center && c.topology.kind != TopologyKind::star) {
        throw ArgumentError("--center only applies to star topologies");
    }
    if (!c.topology.pairs.empty() && c.topology.kind != TopologyKind::custom) {
        throw ArgumentError("--pairs only applies to custom topologies");
    }
    if (c.variant == Variant::star_qudit && c.topology.kind != TopologyKind::star) {
        throw ArgumentError("the qudit variant requires a star topology");
    }
    if (c.variant == Variant::relay && c.topology.kind != TopologyKind::ring) {
        throw ArgumentError("the relay variant requires a ring topology");
    }
    if (c.decompose && c.variant != Variant::single_carrier) {
        throw ArgumentError("--decompose applies to the single-carrier variant");
    }
    (void)c.topology.build();
}

/// "1-2,2-3,3-4" -> pairs.
inline std::vector<NodePair> parse_pairs(const std::string &text) {
    std::vector<NodePair> pairs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dash = item.find('-');
        if (dash == std::string::npos) {
            throw ArgumentError("pair '" + item + "' is not of the form i-j");
        }
        try {
            std::size_t used_a = 0;
            std::size_t used_b = 0;
            const auto a = std::stoul(item.substr(0, dash), &used_a);
            const auto b = std::stoul(item.substr(dash + 1), &used_b);
            if (used_a != dash || used_b != item.size() - dash - 1) {
                throw std::invalid_argument(item);
            }
            pairs.push_back({a, b});
        } catch (const std::logic_error &) {
            throw ArgumentError("pair '" + item + "' is not of the form i-j");
        }
    }
    if (pairs.empty()) {
        throw ArgumentError("empty pair list");
    }
    return pairs;
}

/// Topology config document: {kind, nodes, center?, pairs?, variant?}; unknown fields are rejected.
struct TopologyConfig {
    TopologySpec topology;
    std::optional<Variant> variant;
};

inline TopologyConfig parse_topology_config(const std::string &text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ArgumentError(std::string("topology config: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ArgumentError("topology config: expected an object");
    }
    TopologyConfig cfg;
    bool have_kind = false;
    bool have_nodes = false;
    for (const auto &[key, value] : doc.items()) {
        try {
            if (key == "kind") {
                cfg.topology.kind = parse_topology_kind(value.get<std::string>());
                have_kind = true;
            } else if (key == "nodes") {
                const auto n = value.get<long long>();
                if (n < 2) {
                    throw ArgumentError("topology config: nodes must be >= 2");
                }
                cfg.topology.nodes = static_cast<std::size_t>(n);
                have_nodes = true;
            } else if (key == "center") {
                const auto c = value.get<long long>();
                if (c < 1) {
                    throw ArgumentError("topology config: center must be >= 1");
                }
                cfg.topology.center = static_cast<std::size_t>(c);
            } else if (key == "pairs") {
                for (const auto &p : value) {
                    if (!p.is_array() || p.size() != 2) {
                        throw ArgumentError("topology config: each pair must be [i, j]");
                    }
                    const auto a = p[0].get<long long>();
                    const auto b = p[1].get<long long>();
                    if (a < 1 || b < 1) {
                        throw ArgumentError("topology config: node indices are 1-based");
                    }
                    cfg.topology.pairs.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b)});
                }
            } else if (key == "variant") {
                cfg.variant = parse_variant(value.get<std::string>());
            } else {
                throw ArgumentError("topology config: unknown field '" + key + "'");
            }
        } catch (const Json::type_error &e) {
            throw ArgumentError("topology config: field '" + key + "' has the wrong type");
        }
    }
    if (!have_kind || !have_nodes) {
        throw ArgumentError("topology config: 'kind' and 'nodes' are required");
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// serialization

inline Json to_json(const TopologySpec &t) {
    Json j{{"kind", to_string(t.kind)}, {"nodes", t.nodes}};
    if (t.center) {
        j["center"] = *t.center;
    }
    if (!t.pairs.empty()) {
        Json pairs = Json::array();
        for (const auto &p : t.pairs) {
            pairs.push_back({p.a, p.b});
        }
        j["pairs"] = pairs;
    }
    return j;
}

inline Json to_json(const RunConfig &c) {
    return {{"topology", to_json(c.topology)},
            {"variant", to_string(c.variant)},
            {"family", to_string(c.family)},
            {"format", c.format == OutputFormat::json ? "json" : "csv"},
            {"tolerance", c.tolerance},
            {"decompose", c.decompose},
            {"discord", c.with_discord},
            {"check", c.check}};
}

inline Json to_json(const Bipartition &b) {
    return {{"name", b.name()}, {"side_a", b.side_a}, {"side_b", b.side_b}};
}

inline Json to_json(const BipartitionReport &r) {
    Json entries = Json::array();
    for (const auto &e : r.entries) {
        entries.push_back({{"bipartition", to_json(e.bipartition)},
                           {"negative_eigenvalues", e.negative_eigenvalues},
                           {"negativity", e.negativity}});
    }
    return {{"family", to_string(r.family)},
            {"entries", entries},
            {"geometric_average", r.aggregates.geometric_average},
            {"total", r.aggregates.total},
            {"family_sum", r.aggregates.family_sum}};
}

inline Json to_json(const DiscordResult &d) {
    return {{"value", d.value},
            {"theta", d.theta},
            {"phi", d.phi},
            {"base", d.base == LogBase::two ? "2" : "e"},
            {"state_entropy", d.state_entropy},
            {"measured_entropy", d.measured_entropy}};
}

inline Json to_json(const StateDecomposition &d) {
    Json pairs = Json::array();
    for (const auto &[p, w] : d.pair_terms) {
        pairs.push_back({{"pair", {node_label(p.a), node_label(p.b)}}, {"weight", w}});
    }
    Json matchings = Json::array();
    for (const auto &[m, w] : d.matching_terms) {
        Json ps = Json::array();
        for (const auto &p : m) {
            ps.push_back({node_label(p.a), node_label(p.b)});
        }
        matchings.push_back({{"pairs", ps}, {"weight", w}});
    }
    std::vector<double> omega(d.omega.data(), d.omega.data() + d.omega.size());
    return {{"p", d.p()},
            {"q", d.q()},
            {"r", d.r()},
            {"p_plus_q_plus_r", d.p() + d.q() + d.r()},
            {"incoherent_diagonal", omega},
            {"omega_min", d.omega_min()},
            {"pair_terms", pairs},
            {"matching_terms", matchings},
            {"residual", d.residual},
            {"fits", d.fits}};
}

inline Json to_json(const ProtocolSchedule &s) {
    Json steps = Json::array();
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
        steps.push_back({{"index", i + 1},
                         {"action", describe(s.steps[i])},
                         {"role", to_string(s.steps[i].role)},
                         {"produces", s.steps[i].produces}});
    }
    return steps;
}

inline Json to_json(const ProtocolTrace &t) {
    const auto cert = carrier_separability_certificate(t);
    Json steps = Json::array();
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto &e = t.entries[i];
        Json cuts = Json::array();
        for (const auto &c : e.carrier_cuts) {
            cuts.push_back({{"cut", c.cut.name()}, {"negativity", c.negativity}});
        }
        steps.push_back({{"state", e.name},
                         {"step", e.step ? Json(*e.step) : Json(nullptr)},
                         {"action", e.action},
                         {"register", e.state.reg().labels()},
                         {"trace", e.state.trace()},
                         {"probability", e.probability},
                         {"carrier_cuts", cuts},
                         {"zero_negativity", static_cast<bool>(cert[i])}});
    }
    return steps;
}

/// Canonical text of a report: sorted keys, two-space indent, trailing newline.
inline std::string dump(const Json &doc) { return doc.dump(2) + "\n"; }

/// 12 significant digits.
inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace edss
