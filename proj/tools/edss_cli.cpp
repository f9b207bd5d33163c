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

// edss: run the distribution protocols and reproduce the reference tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "edss/commands.hpp"

namespace {

struct TopologyFlags {
    std::string topology = "ring";
    std::size_t nodes = 4;
    std::size_t center = 0;
    std::string pairs;
    std::string variant;
    std::string config;
};

void add_topology_flags(CLI::App *cmd, TopologyFlags &f) {
    auto *topo = cmd->add_option("--topology", f.topology, "linear|ring|star|custom|appendixA");
    auto *nodes = cmd->add_option("--nodes", f.nodes, "number of network nodes")->check(CLI::Range(2, 30));
    auto *center = cmd->add_option("--center", f.center, "star center (1-based)")->check(CLI::PositiveNumber);
    auto *pairs = cmd->add_option("--pairs", f.pairs, "custom pair list, e.g. 1-2,2-3");
    cmd->add_option("--variant", f.variant, "single|multi|qudit|relay");
    auto *config = cmd->add_option("--config", f.config, "JSON topology file")->check(CLI::ExistingFile);
    config->excludes(topo)->excludes(nodes)->excludes(center)->excludes(pairs);
}

edss::TopologyConfig resolve_topology(const TopologyFlags &f) {
    edss::TopologyConfig out;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        std::stringstream ss;
        ss << in.rdbuf();
        out = edss::parse_topology_config(ss.str());
    } else {
        out.topology.kind = edss::parse_topology_kind(f.topology);
        out.topology.nodes = f.nodes;
        if (f.center > 0) {
            out.topology.center = f.center;
        }
        if (!f.pairs.empty()) {
            out.topology.pairs = edss::parse_pairs(f.pairs);
        }
    }
    if (!f.variant.empty()) {
        out.variant = edss::parse_variant(f.variant);
    }
    return out;
}

edss::OutputFormat parse_format(const std::string &s) {
    if (s == "json") return edss::OutputFormat::json;
    if (s == "csv") return edss::OutputFormat::csv;
    throw edss::ArgumentError("unknown format '" + s + "'");
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw edss::ResourceError("cannot open '" + path + "' for writing");
    }
    out << text;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement distribution with separable carriers: protocol simulation and table reproduction"};
    app.require_subcommand(1);

    std::string format = "json";
    std::string out;
    double tolerance = 0.0;
    bool timing = false;

    // simulate
    auto *sim = app.add_subcommand("simulate", "run one protocol and report bipartition spectra");
    TopologyFlags topo;
    std::string family = "nodes";
    bool decompose = false;
    bool with_discord = false;
    bool check = false;
    add_topology_flags(sim, topo);
    sim->add_option("--family", family, "nodes|all");
    sim->add_option("--format", format, "json|csv");
    sim->add_option("--out", out, "output path (default: stdout)");
    sim->add_option("--tolerance", tolerance, "golden-check tolerance");
    sim->add_flag("--decompose", decompose, "fit the post-selected network state to the pair/matching ansatz");
    sim->add_flag("--discord", with_discord, "include the seed discord");
    sim->add_flag("--check", check, "compare against the reference tables when the configuration has one");
    sim->add_flag("--timing", timing, "include wall-clock timing");

    // tables
    auto *tables = app.add_subcommand("tables", "reproduce the reference eigenvalue tables and averages");
    tables->add_option("--tolerance", tolerance, "eigenvalue tolerance");
    tables->add_option("--out", out, "output path (default: stdout)");
    tables->add_flag("--timing", timing, "include wall-clock timing");

    // trend
    auto *trend = app.add_subcommand("trend", "ring single-carrier sweep over N");
    std::size_t max_nodes = 8;
    trend->add_option("--max-nodes", max_nodes, "largest N (3..10)")->check(CLI::Range(3, 10));
    trend->add_option("--format", format, "json|csv");
    trend->add_option("--out", out, "output path (default: stdout)");
    trend->add_flag("--timing", timing, "include wall-clock timing");

    // discord
    auto *disc = app.add_subcommand("discord", "relative entropy of discord of a two-qubit state");
    std::string state = "seed";
    std::string measured = "B";
    std::string base = "2";
    bool report_angles = false;
    std::size_t sweep = 0;
    disc->add_option("--state", state, "seed|product|classical");
    disc->add_option("--measured", measured, "measured subsystem (A or B)");
    disc->add_option("--base", base, "logarithm base: 2 or e");
    disc->add_flag("--report-angles", report_angles, "re-evaluate at the optimal angles");
    disc->add_option("--sweep", sweep, "diagnostic grid size per angle");
    disc->add_option("--tolerance", tolerance, "golden-check tolerance");
    disc->add_option("--out", out, "output path (default: stdout)");
    disc->add_flag("--timing", timing, "include wall-clock timing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    edss::CommandResult result;
    try {
        if (*sim) {
            const auto tc = resolve_topology(topo);
            edss::RunConfig cfg;
            cfg.topology = tc.topology;
            cfg.variant = tc.variant.value_or(edss::Variant::single_carrier);
            cfg.family = edss::parse_family(family);
            cfg.format = parse_format(format);
            cfg.out = out;
            if (sim->count("--tolerance")) {
                cfg.tolerance = tolerance;
            }
            cfg.decompose = decompose;
            cfg.with_discord = with_discord;
            cfg.timing = timing;
            cfg.check = check;
            result = edss::cmd_simulate(cfg);
        } else if (*tables) {
            edss::TablesOptions opt;
            if (tables->count("--tolerance")) {
                opt.tolerance = tolerance;
            }
            opt.timing = timing;
            result = edss::cmd_tables(opt);
        } else if (*trend) {
            edss::TrendOptions opt;
            opt.max_nodes = max_nodes;
            opt.format = parse_format(format);
            opt.timing = timing;
            result = edss::cmd_trend(opt);
        } else if (*disc) {
            edss::DiscordConfig cfg;
            cfg.state = edss::parse_discord_input(state);
            cfg.measured = measured;
            if (base == "2") {
                cfg.base = edss::LogBase::two;
            } else if (base == "e") {
                cfg.base = edss::LogBase::e;
            } else {
                throw edss::ArgumentError("base must be 2 or e");
            }
            cfg.report_angles = report_angles;
            cfg.sweep = sweep;
            if (disc->count("--tolerance")) {
                cfg.tolerance = tolerance;
            }
            cfg.timing = timing;
            result = edss::cmd_discord(cfg);
        }
    } catch (const edss::ArgumentError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const edss::ProtocolError &e) {
        std::cerr << "protocol error at step " << e.step() << ": " << e.what() << "\n";
        return 3;
    } catch (const edss::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    try {
        emit(result.text, out);
    } catch (const edss::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return result.exit_status;
}
